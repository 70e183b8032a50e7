/** Small-radius overlay: each panel overlays three cavity radii for one host material.
 *
 * Usage: fig5_small_radii <csv...> [-o out.svg] [--log-y] [--per-panel k]
 */

import { runRateScript } from "./render.js";

try {
  runRateScript(process.argv.slice(2), 3);
} catch (error) {
  console.error(String(error));
  process.exit(1);
}
