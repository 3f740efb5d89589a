/** Radar chart of normalized property scores, hand-rolled SVG.
 *
 * Axis order and values come straight from the service's `radar` block;
 * an optional second polygon overlays a scenario's normalized scores.
 */

import { clear, svgEl } from "./dom";
import type { RadarAxis } from "./types";

const SIZE = 320;
const CENTER = SIZE / 2;
const RADIUS = 120;
const LABEL_RADIUS = RADIUS + 18;
const RINGS = [0.25, 0.5, 0.75, 1.0];

function point(index: number, count: number, value: number): [number, number] {
  const angle = -Math.PI / 2 + (2 * Math.PI * index) / count;
  return [
    CENTER + RADIUS * value * Math.cos(angle),
    CENTER + RADIUS * value * Math.sin(angle),
  ];
}

function polygonPoints(values: number[], count: number): string {
  return values
    .map((value, index) => point(index, count, value).join(","))
    .join(" ");
}

export function renderRadar(
  root: HTMLElement,
  titles: Record<string, string>,
  baseline: RadarAxis[],
  scenario?: RadarAxis[],
): void {
  clear(root);
  const count = baseline.length;
  if (count === 0) return;

  const svg = svgEl("svg", {
    viewBox: `0 0 ${SIZE} ${SIZE}`,
    class: "radar",
    role: "img",
  });

  for (const ring of RINGS) {
    svg.appendChild(
      svgEl("polygon", {
        class: "radar-ring",
        points: polygonPoints(new Array<number>(count).fill(ring), count),
      }),
    );
  }

  baseline.forEach((axis, index) => {
    const [x, y] = point(index, count, 1);
    svg.appendChild(
      svgEl("line", {
        class: "radar-spoke",
        x1: String(CENTER),
        y1: String(CENTER),
        x2: String(x),
        y2: String(y),
      }),
    );
    const [lx, ly] = [
      CENTER + LABEL_RADIUS * Math.cos(-Math.PI / 2 + (2 * Math.PI * index) / count),
      CENTER + LABEL_RADIUS * Math.sin(-Math.PI / 2 + (2 * Math.PI * index) / count),
    ];
    const label = svgEl("text", {
      class: "radar-label",
      x: String(lx),
      y: String(ly),
      "text-anchor":
        Math.abs(lx - CENTER) < 1 ? "middle" : lx < CENTER ? "end" : "start",
      "data-axis": axis.property,
    });
    label.textContent = titles[axis.property] ?? axis.property;
    svg.appendChild(label);
  });

  svg.appendChild(
    svgEl("polygon", {
      class: "radar-series baseline",
      "data-series": "baseline",
      points: polygonPoints(
        baseline.map((axis) => axis.value),
        count,
      ),
    }),
  );

  if (scenario) {
    const byProperty = new Map(scenario.map((axis) => [axis.property, axis.value]));
    svg.appendChild(
      svgEl("polygon", {
        class: "radar-series scenario",
        "data-series": "scenario",
        points: polygonPoints(
          baseline.map((axis) => byProperty.get(axis.property) ?? axis.value),
          count,
        ),
      }),
    );
  }

  root.appendChild(svg);
}
