// End-to-end what-if loop against the real service: compare the reference
// workload over the full catalog, click the best region, and check the
// refreshed estimate shows that region's numbers as returned by the API.

import assert from "node:assert/strict";
import { spawn, ChildProcess } from "node:child_process";
import { after, before, test } from "node:test";

import { ApiClient } from "../src/api.js";
import {
  applyRegionChoice,
  FormState,
  isComparable,
  isSubmittable,
  toCompareBody,
  toEstimateBody,
} from "../src/state.js";
import { bestRow } from "../src/compare.js";

const PORT = 18742 + (process.pid % 500);
const BASE_URL = `http://127.0.0.1:${PORT}`;

let service: ChildProcess;
const api = new ApiClient(BASE_URL);

const REFERENCE_WORKLOAD: FormState = {
  provider: "",
  region_code: "",
  hardware_name: "Tesla V100",
  device_count: 8,
  hours: 336,
  pue_override: 1.0,
  utilization: null,
};

async function waitForService(): Promise<void> {
  for (let attempt = 0; attempt < 150; attempt++) {
    try {
      const health = await api.health();
      if (health.status === "ok") return;
    } catch {
      // not up yet
    }
    await new Promise((resolve) => setTimeout(resolve, 100));
  }
  throw new Error(`service did not come up on ${BASE_URL}`);
}

before(async () => {
  service = spawn(
    "python3",
    ["-m", "traincarbon.service", "--host", "127.0.0.1", "--port", String(PORT)],
    { stdio: "ignore" },
  );
  await waitForService();
});

after(() => {
  service.kill("SIGTERM");
});

test("dropdown sources: providers, regions, hardware come from the API", async () => {
  const providers = await api.providers();
  assert.deepEqual(providers, ["aws", "azure", "gcp"]);
  const regions = await api.regions("gcp");
  assert.equal(regions.length, 20);
  const hardware = await api.hardware();
  assert.equal(hardware.length, 11);
  assert.ok(hardware.every((h) => typeof h.gflops32_per_watt === "number"));
});

test("what-if loop: compare, click the winner, estimate matches the API", async () => {
  let form = REFERENCE_WORKLOAD;
  assert.equal(isComparable(form), true);
  assert.equal(isSubmittable(form), false); // no region chosen yet

  const comparison = await api.compare(toCompareBody(form, null, "gross"));
  assert.equal(comparison.results.length, 74);
  const winner = bestRow(comparison.results);
  assert.ok(winner);
  assert.equal(winner.provider, "gcp");
  assert.equal(winner.region_code, "europe-west6");

  // The click handler writes the chosen region back into the form.
  form = applyRegionChoice(form, winner.provider, winner.region_code);
  assert.equal(isSubmittable(form), true);

  const estimate = await api.estimate(toEstimateBody(form));
  // Reference workload at 16 g/kWh with PUE pinned to 1.0:
  // 300 W x 8 x 336 h = 806.4 kWh -> 12902.4 g gross, fully offset.
  assert.equal(estimate.energy.total_kwh, 806.4);
  assert.equal(estimate.gross_gco2eq, 12902.4);
  assert.equal(estimate.offset_gco2eq, 12902.4);
  assert.equal(estimate.net_gco2eq, 0);
  assert.equal(estimate.region.region_code, "europe-west6");
  assert.ok(estimate.dataset_version.length > 0);

  // And the comparison row the user clicked shows the same numbers.
  assert.equal(winner.total_kwh, estimate.energy.total_kwh);
  assert.equal(winner.gross_gco2eq, estimate.gross_gco2eq);
  assert.equal(winner.net_gco2eq, estimate.net_gco2eq);
});

test("API errors surface with suggestion lists for the inline display", async () => {
  await assert.rejects(
    api.estimate({
      provider: "aws",
      region_code: "qc-central-9",
      hardware_name: "Tesla V100",
      device_count: 1,
      hours: 1,
      pue_override: null,
      utilization: 1,
    }),
    (error: any) => {
      assert.equal(error.status, 404);
      assert.equal(error.code, "not_found");
      assert.ok(error.suggestions.length > 0);
      return true;
    },
  );
});
