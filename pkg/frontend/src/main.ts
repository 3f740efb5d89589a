import { ApiClient } from "./api";
import { boot } from "./app";
import "./styles.css";

const root = document.getElementById("app");
if (!root) throw new Error("missing #app mount point");
void boot(root, new ApiClient(""));
