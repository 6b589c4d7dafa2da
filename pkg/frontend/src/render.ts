// SVG rendering of the current session. Every color and number shown
// here is read from the latest server response, never recomputed.

import { SessionView, SeriesTerm } from "./api.js";
import { Point } from "./layout.js";

const SVG_NS = "http://www.w3.org/2000/svg";

function el(name: string, attrs: Record<string, string>): SVGElement {
  const node = document.createElementNS(SVG_NS, name);
  for (const [key, value] of Object.entries(attrs)) node.setAttribute(key, value);
  return node;
}

export type VertexHandlers = {
  onClick: (vertex: number) => void;
  onDragStart: (vertex: number, event: PointerEvent) => void;
};

export function renderQuiver(
  svg: SVGSVGElement,
  view: SessionView,
  positions: Map<number, Point>,
  greenOnly: boolean,
  handlers: VertexHandlers,
): void {
  svg.replaceChildren();
  const defs = el("defs", {});
  const marker = el("marker", {
    id: "arrowhead",
    viewBox: "0 0 10 10",
    refX: "9",
    refY: "5",
    markerWidth: "7",
    markerHeight: "7",
    orient: "auto-start-reverse",
  });
  marker.appendChild(el("path", { d: "M 0 0 L 10 5 L 0 10 z", fill: "#555" }));
  defs.appendChild(marker);
  svg.appendChild(defs);

  const greens = new Set(view.greens);
  const radius = 17;

  for (const [source, target, mult] of view.quiver.arrows) {
    const a = positions.get(source);
    const b = positions.get(target);
    if (!a || !b) continue;
    const dx = b.x - a.x;
    const dy = b.y - a.y;
    const d = Math.max(Math.sqrt(dx * dx + dy * dy), 1);
    const sx = a.x + (dx / d) * (radius + 2);
    const sy = a.y + (dy / d) * (radius + 2);
    const tx = b.x - (dx / d) * (radius + 4);
    const ty = b.y - (dy / d) * (radius + 4);
    svg.appendChild(
      el("line", {
        x1: `${sx}`,
        y1: `${sy}`,
        x2: `${tx}`,
        y2: `${ty}`,
        stroke: "#555",
        "stroke-width": mult > 1 ? "2.5" : "1.5",
        "marker-end": "url(#arrowhead)",
        class: "edge",
      }),
    );
    if (mult > 1) {
      // multiplicity badge instead of parallel strands
      const mx = (sx + tx) / 2 - dy / d * 10;
      const my = (sy + ty) / 2 + dx / d * 10;
      const badge = el("text", {
        x: `${mx}`,
        y: `${my}`,
        class: "mult-badge",
        "text-anchor": "middle",
        "dominant-baseline": "middle",
      });
      badge.textContent = `${mult}`;
      svg.appendChild(badge);
    }
  }

  for (let vertex = 1; vertex <= view.quiver.n; vertex++) {
    const p = positions.get(vertex);
    if (!p) continue;
    const isGreen = greens.has(vertex);
    const group = el("g", {
      class: `vertex ${isGreen ? "green" : "red"}`,
      "data-vertex": `${vertex}`,
      "data-status": isGreen ? "green" : "red",
    });
    const disabled = greenOnly && !isGreen;
    if (disabled) group.classList.add("disabled");
    const circle = el("circle", {
      cx: `${p.x}`,
      cy: `${p.y}`,
      r: `${radius}`,
    });
    const label = el("text", {
      x: `${p.x}`,
      y: `${p.y}`,
      "text-anchor": "middle",
      "dominant-baseline": "central",
    });
    label.textContent = `${vertex}`;
    group.appendChild(circle);
    group.appendChild(label);
    if (!disabled) {
      group.addEventListener("click", () => handlers.onClick(vertex));
    }
    group.addEventListener("pointerdown", (event) =>
      handlers.onDragStart(vertex, event as PointerEvent),
    );
    svg.appendChild(group);
  }
}

export function renderCMatrix(table: HTMLTableElement, view: SessionView): void {
  table.innerHTML = "";
  for (const row of view.c_matrix) {
    const tr = document.createElement("tr");
    for (const entry of row) {
      const td = document.createElement("td");
      td.textContent = `${entry}`;
      if (entry > 0) td.className = "pos";
      if (entry < 0) td.className = "neg";
      tr.appendChild(td);
    }
    table.appendChild(tr);
  }
}

export function renderHistory(target: HTMLElement, view: SessionView): void {
  target.textContent = view.history.length ? view.history.join(",") : "(empty)";
}

function formatPolynomial(coeffs: string[]): string {
  const parts: string[] = [];
  coeffs.forEach((c, power) => {
    if (c === "0") return;
    const base = power === 0 ? c : c === "1" ? "" : c === "-1" ? "-" : c;
    const unit = power === 0 ? "" : power === 1 ? "v" : `v^${power}`;
    parts.push(base && unit ? `${base}${unit}` : base || unit);
  });
  if (!parts.length) return "0";
  return parts.join(" + ").replace(/\+ -/g, "- ");
}

export function renderSeries(table: HTMLTableElement, terms: SeriesTerm[]): void {
  table.innerHTML = "";
  const head = document.createElement("tr");
  head.innerHTML = "<th>y-exponent</th><th>coefficient</th>";
  table.appendChild(head);
  for (const term of terms) {
    const tr = document.createElement("tr");
    const exp = document.createElement("td");
    exp.textContent = `(${term.exp.join(",")})`;
    const coeff = document.createElement("td");
    const num = formatPolynomial(term.num);
    const den = formatPolynomial(term.den);
    coeff.textContent = den === "1" ? num : `(${num}) / (${den})`;
    tr.appendChild(exp);
    tr.appendChild(coeff);
    table.appendChild(tr);
  }
}
