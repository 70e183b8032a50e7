/** Radius-comparison overlay: each panel overlays a large and a small cavity sweep for one host material.
 *
 * Usage: fig3_radius_comparison <csv...> [-o out.svg] [--log-y] [--per-panel k]
 */

import { runRateScript } from "./render.js";

try {
  runRateScript(process.argv.slice(2), 2);
} catch (error) {
  console.error(String(error));
  process.exit(1);
}
