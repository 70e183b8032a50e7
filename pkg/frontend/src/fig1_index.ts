/** Refractive-index figure: three absorption levels, panels (a) Re n, (b) Im n.
 *
 * Usage: fig1_index <gamma-low.csv> <gamma-mid.csv> <gamma-high.csv> [-o out.svg]
 */

import { renderIndexFigure } from "./render.js";

const argv = process.argv.slice(2);
const csvPaths: string[] = [];
let outPath = "fig1_index.svg";
for (let i = 0; i < argv.length; i++) {
  if (argv[i] === "-o" || argv[i] === "--out") {
    outPath = argv[++i];
  } else if (argv[i].startsWith("-")) {
    console.error(`unknown option ${argv[i]}`);
    process.exit(2);
  } else {
    csvPaths.push(argv[i]);
  }
}
try {
  renderIndexFigure(csvPaths, outPath);
} catch (error) {
  console.error(String(error));
  process.exit(1);
}
