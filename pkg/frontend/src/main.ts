import { mountTrainer } from "./app.js";
import { ServiceClient } from "./client.js";

const root = document.getElementById("app");
if (!root) {
  throw new Error("missing #app mount point");
}
mountTrainer(root, (baseUrl) => new ServiceClient(baseUrl));
