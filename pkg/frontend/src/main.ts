/** Browser entry point: wires the form and panels to the App state. */

import { App } from "./app.js";
import { GUEST_TYPES, SearchFormState } from "./types.js";

function readForm(root: Document): SearchFormState {
  const value = (id: string) =>
    (root.getElementById(id) as HTMLInputElement | HTMLSelectElement | null)?.value ?? "";
  const guestType = value("guest-type");
  return {
    guestType: (GUEST_TYPES as readonly string[]).includes(guestType)
      ? (guestType as SearchFormState["guestType"])
      : "",
    searchTitle: value("search-title"),
    city: value("city"),
    region: value("region"),
    minRating: value("min-rating") as SearchFormState["minRating"],
  };
}

export function mount(root: Document = document): App {
  const app = new App((url) => fetch(url));
  const resultsEl = root.getElementById("results");
  const detailEl = root.getElementById("detail");
  const form = root.getElementById("search-form");

  const paint = () => {
    if (resultsEl) resultsEl.innerHTML = app.resultsHtml;
    if (detailEl) detailEl.innerHTML = app.detailHtml;
  };

  form?.addEventListener("submit", (event) => {
    event.preventDefault();
    void app.submitSearch(readForm(root)).then(paint);
    paint(); // show the loading state immediately
  });

  resultsEl?.addEventListener("click", (event) => {
    const target = event.target as HTMLElement;
    const hotelId = target.closest<HTMLElement>(".detail-link")?.dataset.hotelId;
    if (hotelId) void app.openDetail(hotelId).then(paint);
  });

  paint();
  return app;
}

if (typeof document !== "undefined" && document.getElementById("search-form")) {
  mount();
}
