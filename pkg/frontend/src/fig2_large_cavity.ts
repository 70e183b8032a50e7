/** Large-cavity rate figure: one panel per host material, curves are the absorption triplet (solid/dashed/dotted).
 *
 * Usage: fig2_large_cavity <csv...> [-o out.svg] [--log-y] [--per-panel k]
 */

import { runRateScript } from "./render.js";

try {
  runRateScript(process.argv.slice(2), 3);
} catch (error) {
  console.error(String(error));
  process.exit(1);
}
