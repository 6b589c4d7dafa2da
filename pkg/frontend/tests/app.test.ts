// @vitest-environment jsdom
//
// Golden pass-through tests: the API is stubbed and every rendered
// status, matrix entry, and coefficient must be exactly what the stub
// returned -- the UI does no quiver mathematics of its own.

import { beforeEach, describe, expect, it } from "vitest";

import { ApiClient, SessionView } from "../src/api.js";
import { AppElements, collectElements, ExplorerApp } from "../src/app.js";

const PAGE = `
  <select id="catalog-select"></select>
  <button id="load-fixture"></button>
  <label><input type="checkbox" id="green-only" /></label>
  <button id="undo-button"></button>
  <div id="error-box"></div>
  <svg id="quiver-view"></svg>
  <div id="banner" class="banner"></div>
  <div id="history"></div>
  <table id="c-matrix"></table>
  <input id="degree-input" type="number" value="6" />
  <button id="fetch-series"></button>
  <button id="record-history"></button>
  <button id="compare-recorded"></button>
  <div id="badge" class="badge"></div>
  <table id="series-table"></table>
  <textarea id="quiver-json"></textarea>
  <button id="load-json"></button>
`;

function baseView(): SessionView {
  return {
    id: "s1",
    quiver: { n: 2, arrows: [[1, 2, 1]] },
    origin: { n: 2, arrows: [[1, 2, 1]] },
    greens: [1, 2],
    reds: [],
    c_matrix: [
      [1, 0],
      [0, 1],
    ],
    history: [],
    all_red: false,
  };
}

type Route = (url: string, init?: RequestInit) => { status: number; body: unknown } | null;

function makeStub(routes: Route[]) {
  const requests: { url: string; init?: RequestInit }[] = [];
  const fetchFn = async (url: string, init?: RequestInit): Promise<Response> => {
    requests.push({ url, init });
    for (const route of routes) {
      const hit = route(url, init);
      if (hit) {
        return new Response(JSON.stringify(hit.body), {
          status: hit.status,
          headers: { "content-type": "application/json" },
        });
      }
    }
    return new Response(JSON.stringify({ detail: `no stub for ${url}` }), { status: 500 });
  };
  return { requests, fetchFn };
}

function flush(): Promise<void> {
  return new Promise((resolve) => setTimeout(resolve, 0));
}

let els: AppElements;

beforeEach(() => {
  document.body.innerHTML = PAGE;
  els = collectElements(document);
});

function appWith(routes: Route[]) {
  const stub = makeStub(routes);
  const app = new ExplorerApp(new ApiClient("", stub.fetchFn), els, null);
  return { app, requests: stub.requests };
}

function renderedStatuses(): Record<string, string> {
  const out: Record<string, string> = {};
  document.querySelectorAll("#quiver-view .vertex").forEach((node) => {
    out[node.getAttribute("data-vertex")!] = node.getAttribute("data-status")!;
  });
  return out;
}

function renderedMatrix(): number[][] {
  return [...document.querySelectorAll("#c-matrix tr")].map((tr) =>
    [...tr.querySelectorAll("td")].map((td) => Number(td.textContent)),
  );
}

describe("pass-through rendering", () => {
  it("renders exactly the statuses and c-matrix the stub returns", async () => {
    // deliberately "impossible" data: proves nothing is recomputed locally
    const created = baseView();
    const mutated: SessionView = {
      ...baseView(),
      greens: [2],
      reds: [1],
      c_matrix: [
        [-7, 3],
        [0, 5],
      ],
      history: [1],
    };
    const { app, requests } = appWith([
      (url, init) => (init?.method === "POST" && url === "/sessions" ? { status: 201, body: created } : null),
      (url, init) =>
        init?.method === "POST" && url === "/sessions/s1/mutations"
          ? { status: 200, body: mutated }
          : null,
    ]);
    els.quiverTextarea.value = JSON.stringify(created.quiver);
    await app.loadFromText();
    expect(renderedStatuses()).toEqual({ "1": "green", "2": "green" });

    const vertex = document.querySelector('[data-vertex="1"]') as SVGGElement;
    vertex.dispatchEvent(new MouseEvent("click", { bubbles: true }));
    await flush();

    const posted = requests.find((r) => r.url === "/sessions/s1/mutations");
    expect(JSON.parse(String(posted?.init?.body))).toEqual({ vertex: 1 });
    expect(renderedStatuses()).toEqual({ "1": "red", "2": "green" });
    expect(renderedMatrix()).toEqual(mutated.c_matrix);
    expect(els.history.textContent).toBe("1");
  });

  it("shows the completion banner only when the server says all red", async () => {
    const done: SessionView = { ...baseView(), greens: [], reds: [1, 2], all_red: true, history: [1, 2] };
    const { app } = appWith([
      (url, init) => (init?.method === "POST" && url === "/sessions" ? { status: 201, body: done } : null),
    ]);
    els.quiverTextarea.value = JSON.stringify(done.quiver);
    await app.loadFromText();
    expect(els.banner.textContent).toContain("reddening sequence complete");
    expect(els.banner.className).toContain("on");
    expect(els.history.textContent).toBe("1,2");
  });

  it("keeps the view unchanged when the server rejects a mutation", async () => {
    const created = baseView();
    const { app } = appWith([
      (url, init) => (init?.method === "POST" && url === "/sessions" ? { status: 201, body: created } : null),
      (url, init) =>
        init?.method === "POST" && url.endsWith("/mutations")
          ? { status: 400, body: { detail: "cannot mutate at vertex 9" } }
          : null,
    ]);
    els.quiverTextarea.value = JSON.stringify(created.quiver);
    await app.loadFromText();
    app.clickVertex(1);
    await flush();
    expect(els.error.textContent).toContain("cannot mutate at vertex 9");
    expect(renderedStatuses()).toEqual({ "1": "green", "2": "green" });
  });
});

describe("interaction rules", () => {
  it("green-only mode ignores clicks on red vertices", async () => {
    const view: SessionView = { ...baseView(), greens: [2], reds: [1] };
    const { app, requests } = appWith([
      (url, init) => (init?.method === "POST" && url === "/sessions" ? { status: 201, body: view } : null),
    ]);
    els.quiverTextarea.value = JSON.stringify(view.quiver);
    await app.loadFromText();
    els.greenOnlyToggle.checked = true;
    els.greenOnlyToggle.dispatchEvent(new Event("change"));

    const red = document.querySelector('[data-vertex="1"]')!;
    expect(red.classList.contains("disabled")).toBe(true);
    red.dispatchEvent(new MouseEvent("click", { bubbles: true }));
    app.clickVertex(1); // direct call must be ignored too
    await flush();
    expect(requests.filter((r) => r.url.endsWith("/mutations"))).toHaveLength(0);
  });

  it("queues rapid clicks so one request is in flight at a time", async () => {
    const created = baseView();
    let release = () => {};
    const gate = new Promise<void>((resolve) => (release = resolve));
    const log: number[] = [];
    const fetchFn = async (url: string, init?: RequestInit): Promise<Response> => {
      if (url === "/sessions" && init?.method === "POST") {
        return new Response(JSON.stringify(created), { status: 201 });
      }
      const vertex = JSON.parse(String(init?.body)).vertex as number;
      log.push(vertex);
      if (log.length === 1) await gate;
      return new Response(JSON.stringify({ ...created, history: log.slice() }), { status: 200 });
    };
    const app = new ExplorerApp(new ApiClient("", fetchFn), els, null);
    els.quiverTextarea.value = JSON.stringify(created.quiver);
    await app.loadFromText();

    app.clickVertex(1);
    app.clickVertex(2);
    await flush();
    expect(log).toEqual([1]); // second click waits in the queue
    expect(app.pendingClicks).toBe(1);
    release();
    await flush();
    await flush();
    expect(log).toEqual([1, 2]);
  });

  it("undo renders the restored state from the server", async () => {
    const created: SessionView = { ...baseView(), greens: [2], reds: [1], history: [1] };
    const restored = baseView();
    const { app } = appWith([
      (url, init) => (init?.method === "POST" && url === "/sessions" ? { status: 201, body: created } : null),
      (url, init) =>
        init?.method === "DELETE" && url.endsWith("/mutations/last")
          ? { status: 200, body: restored }
          : null,
    ]);
    els.quiverTextarea.value = JSON.stringify(created.quiver);
    await app.loadFromText();
    expect(renderedStatuses()).toEqual({ "1": "red", "2": "green" });
    await app.undo();
    expect(renderedStatuses()).toEqual({ "1": "green", "2": "green" });
    expect(els.history.textContent).toBe("(empty)");
  });

  it("malformed quiver JSON surfaces inline and creates no session", async () => {
    const { app, requests } = appWith([]);
    els.quiverTextarea.value = "{not json";
    await app.loadFromText();
    expect(els.error.textContent).toContain("does not parse");
    expect(requests).toHaveLength(0);
    expect(app.view).toBeNull();
  });

  it("renders multiplicity badges for double arrows", async () => {
    const markov: SessionView = {
      ...baseView(),
      quiver: { n: 3, arrows: [[1, 2, 2], [2, 3, 2], [3, 1, 2]] },
      origin: { n: 3, arrows: [[1, 2, 2], [2, 3, 2], [3, 1, 2]] },
      greens: [1, 2, 3],
      c_matrix: [
        [1, 0, 0],
        [0, 1, 0],
        [0, 0, 1],
      ],
    };
    const { app } = appWith([
      (url, init) => (init?.method === "POST" && url === "/sessions" ? { status: 201, body: markov } : null),
    ]);
    els.quiverTextarea.value = JSON.stringify(markov.quiver);
    await app.loadFromText();
    const badges = [...document.querySelectorAll(".mult-badge")].map((b) => b.textContent);
    expect(badges).toEqual(["2", "2", "2"]);
  });
});

describe("series inspector", () => {
  async function loadedApp(routes: Route[]) {
    const created = baseView();
    const { app, requests } = appWith([
      (url, init) => (init?.method === "POST" && url === "/sessions" ? { status: 201, body: created } : null),
      ...routes,
    ]);
    els.quiverTextarea.value = JSON.stringify(created.quiver);
    await app.loadFromText();
    return { app, requests };
  }

  it("renders the term table from the response", async () => {
    const { app } = await loadedApp([
      (url) =>
        url.includes("/dt?")
          ? {
              status: 200,
              body: {
                degree: 6,
                history: [],
                factors: [],
                series: [
                  { exp: [0, 0], num: ["1"], den: ["1"] },
                  { exp: [1, 0], num: ["0", "1"], den: ["-1", "0", "1"] },
                ],
              },
            }
          : null,
    ]);
    await app.fetchSeries();
    const rows = [...document.querySelectorAll("#series-table tr")].map((tr) => tr.textContent);
    expect(rows[1]).toBe("(0,0)1");
    expect(rows[2]).toBe("(1,0)(v) / (-1 + v^2)");
  });

  it("surfaces the degree cap error inline", async () => {
    const { app } = await loadedApp([
      (url) =>
        url.includes("/dt?")
          ? { status: 422, body: { detail: "degree must be between 1 and 16" } }
          : null,
    ]);
    els.degreeInput.value = "99";
    await app.fetchSeries();
    expect(els.error.textContent).toContain("degree must be between 1 and 16");
  });

  it("shows the equality badge for two recorded histories", async () => {
    const { app, requests } = await loadedApp([
      (url, init) =>
        init?.method === "POST" && url === "/verify" ? { status: 200, body: { equal: true } } : null,
    ]);
    els.degreeInput.value = "10";
    app.recorded = [
      [1, 2],
      [2, 1, 2],
    ];
    await app.compareRecorded();
    expect(els.badge.textContent).toBe("equal up to degree 10");
    expect(els.badge.className).toContain("equal");
    const sent = JSON.parse(String(requests.find((r) => r.url === "/verify")?.init?.body));
    expect(sent.seqA).toEqual([1, 2]);
    expect(sent.seqB).toEqual([2, 1, 2]);
    expect(sent.degree).toBe(10);
  });

  it("shows the first differing exponent when unequal", async () => {
    const { app } = await loadedApp([
      (url, init) =>
        init?.method === "POST" && url === "/verify"
          ? {
              status: 200,
              body: { equal: false, witness: { exp: [0, 1], lhs: "v/(v**2 - 1)", rhs: "0" } },
            }
          : null,
    ]);
    app.recorded = [[1, 2], [1]];
    await app.compareRecorded();
    expect(els.badge.textContent).toBe("differ first at (0,1)");
    expect(els.badge.className).toContain("unequal");
  });
});
