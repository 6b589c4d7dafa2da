// @vitest-environment jsdom
//
// End-to-end replay against a real session server: spawns the Python
// service, walks the two-vertex quiver through 1,2 in the DOM, and
// checks the completion banner, the history panel, and the equality
// badge for the two recorded walks.

import { ChildProcess, spawn, spawnSync } from "node:child_process";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { AppElements, collectElements, ExplorerApp } from "../src/app.js";

const PORT = 8917;
const BASE = `http://127.0.0.1:${PORT}`;

function pythonAvailable(): boolean {
  const probe = spawnSync("python3", ["-c", "import quiverkit, uvicorn"], { timeout: 30_000 });
  return probe.status === 0;
}

const HAVE_SERVER = pythonAvailable();
let server: ChildProcess | null = null;

async function waitForServer(): Promise<void> {
  for (let i = 0; i < 100; i++) {
    try {
      const r = await fetch(`${BASE}/catalog`);
      if (r.ok) return;
    } catch {
      /* not up yet */
    }
    await new Promise((resolve) => setTimeout(resolve, 150));
  }
  throw new Error("server did not come up");
}

beforeAll(async () => {
  if (!HAVE_SERVER) return;
  server = spawn("python3", ["-m", "quiverkit.cli", "serve", "--port", `${PORT}`], {
    stdio: "ignore",
  });
  await waitForServer();
}, 40_000);

afterAll(() => {
  server?.kill();
});

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
  <input id="degree-input" type="number" value="10" />
  <button id="fetch-series"></button>
  <button id="record-history"></button>
  <button id="compare-recorded"></button>
  <div id="badge" class="badge"></div>
  <table id="series-table"></table>
  <textarea id="quiver-json"></textarea>
  <button id="load-json"></button>
`;

async function settle(app: ExplorerApp): Promise<void> {
  for (let i = 0; i < 200 && app.pendingClicks > 0; i++) {
    await new Promise((resolve) => setTimeout(resolve, 10));
  }
  await new Promise((resolve) => setTimeout(resolve, 30));
}

describe.runIf(HAVE_SERVER)("live server replay", () => {
  let els: AppElements;
  let app: ExplorerApp;

  it("walking 1 then 2 turns everything red and shows the banner", async () => {
    document.body.innerHTML = PAGE;
    els = collectElements(document);
    app = new ExplorerApp(new ApiClient(BASE), els, null);
    els.quiverTextarea.value = JSON.stringify({ n: 2, arrows: [[1, 2, 1]] });
    await app.loadFromText();
    expect(app.view).not.toBeNull();
    expect(els.history.textContent).toBe("(empty)");

    app.clickVertex(1);
    app.clickVertex(2);
    await settle(app);

    expect(els.history.textContent).toBe("1,2");
    expect(els.banner.textContent).toContain("reddening sequence complete");
    const statuses = [...document.querySelectorAll("#quiver-view .vertex")].map((v) =>
      v.getAttribute("data-status"),
    );
    expect(statuses).toEqual(["red", "red"]);
  }, 30_000);

  it("the two classic walks compare equal at degree 10", async () => {
    app.recorded = [
      [1, 2],
      [2, 1, 2],
    ];
    els.degreeInput.value = "10";
    await app.compareRecorded();
    expect(els.badge.textContent).toBe("equal up to degree 10");
    expect(els.badge.className).toContain("equal");
  }, 30_000);

  it("the series endpoint feeds the inspector table", async () => {
    await app.fetchSeries();
    const rows = document.querySelectorAll("#series-table tr");
    expect(rows.length).toBeGreaterThan(3);
    expect(rows[1].textContent).toBe("(0,0)1");
  }, 30_000);
});
