// Small force-directed layout: spring edges, pairwise repulsion, mild
// centering. Dragged vertices become pinned; positions are pure
// presentation and never feed back into the mathematics.

export type Point = { x: number; y: number; pinned?: boolean };

export type LayoutInput = {
  n: number;
  edges: [number, number][]; // 1-based vertex pairs
  width: number;
  height: number;
};

export function initialPositions(input: LayoutInput): Map<number, Point> {
  const positions = new Map<number, Point>();
  const r = Math.min(input.width, input.height) * 0.36;
  for (let v = 1; v <= input.n; v++) {
    const angle = (2 * Math.PI * (v - 1)) / input.n - Math.PI / 2;
    positions.set(v, {
      x: input.width / 2 + r * Math.cos(angle),
      y: input.height / 2 + r * Math.sin(angle),
    });
  }
  return positions;
}

export function relax(
  input: LayoutInput,
  positions: Map<number, Point>,
  iterations = 150,
): Map<number, Point> {
  const ideal = Math.min(input.width, input.height) / Math.max(2.2, Math.sqrt(input.n) + 1);
  for (let step = 0; step < iterations; step++) {
    const cooling = 1 - step / iterations;
    const force = new Map<number, { fx: number; fy: number }>();
    for (let v = 1; v <= input.n; v++) force.set(v, { fx: 0, fy: 0 });

    for (let a = 1; a <= input.n; a++) {
      for (let b = a + 1; b <= input.n; b++) {
        const pa = positions.get(a)!;
        const pb = positions.get(b)!;
        let dx = pa.x - pb.x;
        let dy = pa.y - pb.y;
        const d2 = Math.max(dx * dx + dy * dy, 1);
        const push = (ideal * ideal) / d2;
        dx *= push;
        dy *= push;
        force.get(a)!.fx += dx;
        force.get(a)!.fy += dy;
        force.get(b)!.fx -= dx;
        force.get(b)!.fy -= dy;
      }
    }
    for (const [a, b] of input.edges) {
      const pa = positions.get(a)!;
      const pb = positions.get(b)!;
      const dx = pb.x - pa.x;
      const dy = pb.y - pa.y;
      const d = Math.max(Math.sqrt(dx * dx + dy * dy), 1);
      const pull = (d - ideal) / d / 6;
      force.get(a)!.fx += dx * pull;
      force.get(a)!.fy += dy * pull;
      force.get(b)!.fx -= dx * pull;
      force.get(b)!.fy -= dy * pull;
    }

    for (let v = 1; v <= input.n; v++) {
      const p = positions.get(v)!;
      if (p.pinned) continue;
      const f = force.get(v)!;
      f.fx += (input.width / 2 - p.x) / 50;
      f.fy += (input.height / 2 - p.y) / 50;
      const mag = Math.sqrt(f.fx * f.fx + f.fy * f.fy) || 1;
      const cap = 12 * cooling;
      const scale = Math.min(mag, cap) / mag;
      p.x += f.fx * scale;
      p.y += f.fy * scale;
      p.x = Math.min(Math.max(p.x, 24), input.width - 24);
      p.y = Math.min(Math.max(p.y, 24), input.height - 24);
    }
  }
  return positions;
}
