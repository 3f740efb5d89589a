/// <reference types="vitest/config" />
import { defineConfig } from "vite";

// During development the UI is served by Vite and the API by
// `contestkit serve`; in production the service serves the built assets
// itself (`contestkit serve --ui frontend/dist`), so same-origin paths
// work in both setups via this proxy.
const API_PATHS = [
  "/assessments",
  "/scenarios",
  "/interventions",
  "/taxonomy",
  "/ledgers",
  "/reports",
  "/rubrics",
  "/configs",
  "/healthz",
];

export default defineConfig({
  server: {
    proxy: Object.fromEntries(
      API_PATHS.map((path) => [path, "http://127.0.0.1:8000"]),
    ),
  },
  build: {
    target: "es2022",
    outDir: "dist",
  },
  test: {
    environment: "jsdom",
    globalSetup: "./tests/helpers/server.ts",
    include: ["tests/**/*.test.ts"],
    testTimeout: 15000,
    hookTimeout: 30000,
  },
});
