/** Browser bootstrap: wires the session to the DOM.  The only module that
 * touches `document`; everything else is pure and unit-tested. */

import { ApiError, ExplorerApi, fetchTransport } from "./api";
import { renderBoundsChart } from "./chart";
import { errorBanner, renderPolygon } from "./polygonView";
import { ExplorerSession } from "./session";
import type { MutationVertex } from "./types";

export function mountExplorer(root: HTMLElement, baseUrl = ""): void {
  const api = new ExplorerApi(fetchTransport(baseUrl));
  const session = new ExplorerSession(api, "main");

  root.innerHTML = `
    <div class="toolbar">
      <span class="word"></span>
      <button data-action="undo">undo</button>
      <input class="replay-word" placeholder="v2yxy3xy" size="12"/>
      <button data-action="replay">replay</button>
      <label>digits <input class="precision" type="number" value="10" min="1" max="29"/></label>
      <span class="status"></span>
    </div>
    <div class="panes">
      <div class="polygon-pane"></div>
      <div class="chart-pane"></div>
    </div>`;
  const polygonPane = root.querySelector(".polygon-pane") as HTMLElement;
  const chartPane = root.querySelector(".chart-pane") as HTMLElement;
  const wordSpan = root.querySelector(".word") as HTMLElement;
  const status = root.querySelector(".status") as HTMLElement;

  const redraw = () => {
    const s = session.view;
    polygonPane.innerHTML = renderPolygon(s.payload, { precision: s.precision });
    wordSpan.textContent = s.word ? `word: ${s.word}` : "initial rectangle";
    if (s.bounds) {
      chartPane.innerHTML = renderBoundsChart(s.bounds, { precision: s.precision });
    }
  };

  const report = (e: unknown) => {
    // surface engine errors (409: AmbiguousHit, NoIntersection, ...) verbatim
    status.textContent = e instanceof ApiError ? e.message : String(e);
  };

  polygonPane.addEventListener("click", (ev) => {
    const target = (ev.target as Element).closest("[data-vertex]");
    if (!target) {
      return;
    }
    const vertex = target.getAttribute("data-vertex") as MutationVertex;
    session
      .clickMutate(vertex)
      .then(() => session.refreshBounds({ kmax: 500, samples: 80 }))
      .then(redraw, report);
  });
  (root.querySelector('[data-action="undo"]') as HTMLElement).addEventListener("click", () => {
    session.undo().then(redraw, report);
  });
  (root.querySelector('[data-action="replay"]') as HTMLElement).addEventListener("click", () => {
    const word = (root.querySelector(".replay-word") as HTMLInputElement).value;
    session.replay(word).then(redraw, report);
  });
  (root.querySelector(".precision") as HTMLInputElement).addEventListener("change", (ev) => {
    session.setPrecision(Number((ev.target as HTMLInputElement).value));
    redraw();
  });

  session
    .start()
    .then(() => session.refreshBounds({ kmax: 500, samples: 80 }))
    .then(redraw, (e) => {
      polygonPane.innerHTML = errorBanner(String(e));
    });
}
