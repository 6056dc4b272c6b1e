import { ApiClient } from "./api.js";
import { DesignerApp } from "./app.js";

const root = document.getElementById("app");
if (!root) {
  throw new Error("missing #app mount point");
}
void new DesignerApp(root, new ApiClient()).start();
