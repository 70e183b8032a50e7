/** Minimal headless SVG plotting: axes, ticks, and styled polylines.
 *
 * Curves inside one panel are distinguished by line style in the order
 * solid, dashed, dotted (the convention used for increasing absorption or,
 * in overlay figures, decreasing radius).
 */

export interface Curve {
  x: number[];
  y: number[];
  label?: string;
}

export interface Panel {
  curves: Curve[];
  title?: string;
  xLabel: string;
  yLabel: string;
  logY?: boolean;
}

export const LINE_STYLES = ["", "8 4", "2 3"] as const; // solid, dashed, dotted

const WIDTH = 560;
const HEIGHT = 300;
const MARGIN = { left: 64, right: 16, top: 28, bottom: 44 };

function niceTicks(lo: number, hi: number, count = 6): number[] {
  if (!(hi > lo)) {
    const pad = Math.abs(lo) > 0 ? Math.abs(lo) * 0.5 : 1.0;
    lo -= pad;
    hi += pad;
  }
  const span = hi - lo;
  const raw = span / count;
  const magnitude = Math.pow(10, Math.floor(Math.log10(raw)));
  const residual = raw / magnitude;
  const step = (residual >= 5 ? 10 : residual >= 2 ? 5 : residual >= 1 ? 2 : 1) * magnitude;
  const ticks: number[] = [];
  for (let v = Math.ceil(lo / step) * step; v <= hi + 1e-12 * span; v += step) {
    ticks.push(Math.abs(v) < step * 1e-9 ? 0 : v);
  }
  return ticks;
}

function logTicks(lo: number, hi: number): number[] {
  const ticks: number[] = [];
  for (let e = Math.ceil(Math.log10(lo)); e <= Math.floor(Math.log10(hi)); e++) {
    ticks.push(Math.pow(10, e));
  }
  return ticks.length >= 2 ? ticks : [lo, hi];
}

function formatTick(value: number): string {
  if (value === 0) return "0";
  const magnitude = Math.abs(value);
  if (magnitude >= 1e4 || magnitude < 1e-3) return value.toExponential(0);
  return parseFloat(value.toPrecision(6)).toString();
}

function escapeXml(text: string): string {
  return text.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

function renderPanel(panel: Panel, offsetY: number, tag: string): string {
  const finite = (values: number[]) => values.filter((v) => Number.isFinite(v));
  const xs = finite(panel.curves.flatMap((c) => c.x));
  let ys = finite(panel.curves.flatMap((c) => c.y));
  if (panel.logY) {
    ys = ys.filter((v) => v > 0);
  }
  if (xs.length === 0 || ys.length === 0) {
    throw new Error("panel has no finite data");
  }
  const xLo = Math.min(...xs);
  const xHi = Math.max(...xs);
  let yLo = Math.min(...ys);
  let yHi = Math.max(...ys);
  if (yHi === yLo) {
    const pad = Math.abs(yLo) > 0 ? Math.abs(yLo) * 0.5 : 1.0;
    yLo -= pad;
    yHi += pad;
  }

  const plotW = WIDTH - MARGIN.left - MARGIN.right;
  const plotH = HEIGHT - MARGIN.top - MARGIN.bottom;
  const sx = (v: number) => MARGIN.left + ((v - xLo) / (xHi - xLo)) * plotW;
  const syLin = (v: number) => offsetY + MARGIN.top + plotH - ((v - yLo) / (yHi - yLo)) * plotH;
  const syLog = (v: number) =>
    offsetY +
    MARGIN.top +
    plotH -
    ((Math.log10(v) - Math.log10(yLo)) / (Math.log10(yHi) - Math.log10(yLo))) * plotH;
  const sy = panel.logY ? syLog : syLin;

  const parts: string[] = [];
  const frameTop = offsetY + MARGIN.top;
  parts.push(
    `<rect x="${MARGIN.left}" y="${frameTop}" width="${plotW}" height="${plotH}" fill="none" stroke="black" stroke-width="1"/>`,
  );
  if (panel.title) {
    parts.push(
      `<text x="${MARGIN.left + 6}" y="${frameTop - 8}" font-size="13" font-family="sans-serif">${escapeXml(panel.title)}</text>`,
    );
  }

  const xTicks = niceTicks(xLo, xHi);
  for (const t of xTicks) {
    const px = sx(t);
    parts.push(`<line x1="${px}" y1="${frameTop + plotH}" x2="${px}" y2="${frameTop + plotH + 5}" stroke="black"/>`);
    parts.push(
      `<text x="${px}" y="${frameTop + plotH + 18}" font-size="11" text-anchor="middle" font-family="sans-serif">${formatTick(t)}</text>`,
    );
  }
  const yTicks = panel.logY ? logTicks(yLo, yHi) : niceTicks(yLo, yHi);
  for (const t of yTicks) {
    const py = sy(t);
    if (py < frameTop - 1 || py > frameTop + plotH + 1) continue;
    parts.push(`<line x1="${MARGIN.left - 5}" y1="${py}" x2="${MARGIN.left}" y2="${py}" stroke="black"/>`);
    parts.push(
      `<text x="${MARGIN.left - 8}" y="${py + 4}" font-size="11" text-anchor="end" font-family="sans-serif">${formatTick(t)}</text>`,
    );
  }
  parts.push(
    `<text x="${MARGIN.left + plotW / 2}" y="${frameTop + plotH + 36}" font-size="13" text-anchor="middle" font-family="sans-serif">${escapeXml(panel.xLabel)}</text>`,
  );
  parts.push(
    `<text x="${MARGIN.left - 46}" y="${frameTop + plotH / 2}" font-size="13" text-anchor="middle" font-family="sans-serif" transform="rotate(-90 ${MARGIN.left - 46} ${frameTop + plotH / 2})">${escapeXml(panel.yLabel)}</text>`,
  );

  panel.curves.forEach((curve, index) => {
    const style = LINE_STYLES[index % LINE_STYLES.length];
    const dash = style ? ` stroke-dasharray="${style}"` : "";
    const points: string[] = [];
    const segments: string[] = [];
    for (let i = 0; i < curve.x.length; i++) {
      const vx = curve.x[i];
      const vy = curve.y[i];
      const drawable = Number.isFinite(vx) && Number.isFinite(vy) && (!panel.logY || vy > 0);
      if (!drawable) {
        if (points.length > 1) segments.push(points.join(" "));
        points.length = 0;
        continue;
      }
      points.push(`${sx(vx).toFixed(2)},${sy(vy).toFixed(2)}`);
    }
    if (points.length > 1) segments.push(points.join(" "));
    for (const segment of segments) {
      parts.push(
        `<polyline data-series="${tag}-${index}" fill="none" stroke="black" stroke-width="1.2"${dash} points="${segment}"/>`,
      );
    }
  });

  return parts.join("\n");
}

export function renderFigure(panels: Panel[]): string {
  const totalHeight = HEIGHT * panels.length;
  const body = panels
    .map((panel, i) => renderPanel(panel, i * HEIGHT, `p${i}`))
    .join("\n");
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${WIDTH} ${totalHeight}" ` +
    `width="${WIDTH}" height="${totalHeight}">\n` +
    `<rect width="${WIDTH}" height="${totalHeight}" fill="white"/>\n${body}\n</svg>\n`
  );
}
