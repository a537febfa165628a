// Browser entry point: mounts the app and delegates clicks to controller
// actions. One active session per tab; buttons stay disabled while a
// request is in flight.

import { ServiceClient } from "./api";
import { ConsultApp } from "./state";
import { render } from "./view";

const params = new URLSearchParams(window.location.search);
const baseUrl = params.get("service") ?? "http://127.0.0.1:7777";

const root = document.getElementById("app")!;
const app = new ConsultApp(new ServiceClient(baseUrl), (view) => {
  root.innerHTML = render(view);
});
root.innerHTML = render(app.view);

root.addEventListener("click", (event) => {
  const target = (event.target as HTMLElement).closest("button");
  if (!target) {
    return;
  }
  const action = target.dataset.action;
  if (action === "upload") {
    const area = root.querySelector<HTMLTextAreaElement>("[data-field=knb]");
    if (area && area.value.trim()) {
      void app.uploadKb(area.value);
    }
  } else if (action === "use-id") {
    const field = root.querySelector<HTMLInputElement>("[data-field=kb-id]");
    if (field && field.value.trim()) {
      app.useKbId(field.value.trim());
    }
  } else if (action === "start") {
    void app.start();
  } else if (action === "answer" && target.dataset.value) {
    void app.answer(target.dataset.value);
  } else if (action === "exit") {
    void app.exit();
  } else if (action === "restart") {
    void app.restart();
  } else if (action === "dismiss") {
    app.dismissBanner();
  }
});
