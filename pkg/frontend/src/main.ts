import { ApiClient } from "./api.js";
import { collectElements, ExplorerApp } from "./app.js";

const api = new ApiClient("");
const app = new ExplorerApp(api, collectElements(document), window.localStorage);
void app.start();

// handy for poking at the live state from the console
(window as unknown as { explorer: ExplorerApp }).explorer = app;
