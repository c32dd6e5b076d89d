// DOM wiring for the calculator page. All numbers shown here come from API
// responses; this file only moves state between the form and the panels.

import { ApiClient, ApiRequestError, CompareDoc, EstimateDoc } from "./api.js";
import {
  barWidthPercent,
  bestRow,
  formatGrams,
  formatRatio,
  Metric,
  metricValue,
} from "./compare.js";
import {
  applyRegionChoice,
  decodeForm,
  encodeForm,
  FormState,
  isComparable,
  isSubmittable,
  RequestSequencer,
  toCompareBody,
  toEstimateBody,
} from "./state.js";

const api = new ApiClient("");
const estimateSequencer = new RequestSequencer();
const compareSequencer = new RequestSequencer();

let form: FormState = decodeForm(window.location.search);

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

const providerSelect = el<HTMLSelectElement>("provider");
const regionSelect = el<HTMLSelectElement>("region");
const hardwareSelect = el<HTMLSelectElement>("hardware");
const countInput = el<HTMLInputElement>("device-count");
const hoursInput = el<HTMLInputElement>("hours");
const pueInput = el<HTMLInputElement>("pue");
const utilizationInput = el<HTMLInputElement>("utilization");
const estimateButton = el<HTMLButtonElement>("estimate-button");
const compareButton = el<HTMLButtonElement>("compare-button");
const compareMetricSelect = el<HTMLSelectElement>("compare-metric");
const compareProviderSelect = el<HTMLSelectElement>("compare-provider");
const estimatePanel = el<HTMLDivElement>("estimate-panel");
const comparePanel = el<HTMLDivElement>("compare-panel");
const versionFooter = el<HTMLSpanElement>("dataset-version");

// ---------------------------------------------------------------------------
// Rendering
// ---------------------------------------------------------------------------

function renderError(panel: HTMLElement, error: unknown): void {
  panel.replaceChildren();
  const box = document.createElement("div");
  box.className = "error";
  if (error instanceof ApiRequestError) {
    const message = document.createElement("p");
    message.textContent = `${error.code}: ${error.message}`;
    box.append(message);
    if (error.suggestions.length > 0) {
      const hint = document.createElement("p");
      hint.textContent = "Did you mean:";
      const list = document.createElement("ul");
      for (const suggestion of error.suggestions) {
        const item = document.createElement("li");
        item.textContent = suggestion;
        list.append(item);
      }
      box.append(hint, list);
    }
  } else {
    const message = document.createElement("p");
    message.textContent = error instanceof Error ? error.message : String(error);
    box.append(message);
  }
  panel.append(box);
}

function resultRow(label: string, value: string): HTMLElement {
  const row = document.createElement("div");
  row.className = "result-row";
  const key = document.createElement("span");
  key.className = "result-label";
  key.textContent = label;
  const val = document.createElement("span");
  val.className = "result-value";
  val.textContent = value;
  row.append(key, val);
  return row;
}

function renderEstimate(doc: EstimateDoc): void {
  estimatePanel.replaceChildren();
  const title = document.createElement("h3");
  title.textContent = `${doc.region.provider}/${doc.region.region_code} (${doc.region.city}, ${doc.region.country})`;
  estimatePanel.append(
    title,
    resultRow("Grid intensity", `${doc.region.intensity_gco2_per_kwh} gCO2eq/kWh`),
    resultRow(
      "Energy",
      `${doc.energy.total_kwh} kWh (devices ${doc.energy.device_kwh} + overhead ${doc.energy.overhead_kwh})`,
    ),
    resultRow("Gross emissions", `${doc.gross_gco2eq} g (${formatGrams(doc.gross_gco2eq)})`),
    resultRow("Provider offsets", `${doc.offset_gco2eq} g`),
    resultRow("Net emissions", `${doc.net_gco2eq} g (${formatGrams(doc.net_gco2eq)})`),
    resultRow("Dataset version", doc.dataset_version),
  );
  versionFooter.textContent = doc.dataset_version;
}

function renderComparison(doc: CompareDoc): void {
  comparePanel.replaceChildren();
  const metric = doc.metric as Metric;
  const summary = document.createElement("p");
  summary.className = "compare-summary";
  summary.textContent =
    `${doc.results.length} regions, worst/best ${metric} ratio ` +
    `${formatRatio(doc.worst_best_ratio)} (dataset ${doc.dataset_version})`;
  comparePanel.append(summary);

  const best = bestRow(doc.results);
  const list = document.createElement("div");
  list.className = "bars";
  for (const row of doc.results) {
    const item = document.createElement("button");
    item.type = "button";
    item.className = row === best ? "bar best" : "bar";
    item.title = `${row.city}, ${row.country}: ${metricValue(row, metric)} g ${metric}`;
    item.addEventListener("click", () => {
      // What-if loop: adopt this region and refresh the estimate.
      form = applyRegionChoice(form, row.provider, row.region_code);
      providerSelect.value = form.provider;
      void reloadRegions().then(() => {
        regionSelect.value = form.region_code;
        syncControls();
        void runEstimate();
      });
    });

    const fill = document.createElement("span");
    fill.className = "bar-fill";
    fill.style.width = `${Math.max(barWidthPercent(row, doc.results, metric), 0.5)}%`;
    const label = document.createElement("span");
    label.className = "bar-label";
    label.textContent = `${row.rank}. ${row.provider}/${row.region_code} - ${metricValue(row, metric)} g`;
    item.append(fill, label);
    list.append(item);
  }
  comparePanel.append(list);
}

// ---------------------------------------------------------------------------
// Data flows
// ---------------------------------------------------------------------------

async function runEstimate(): Promise<void> {
  if (!isSubmittable(form)) return;
  const token = estimateSequencer.begin();
  try {
    const doc = await api.estimate(toEstimateBody(form));
    if (!estimateSequencer.isCurrent(token)) return; // superseded
    renderEstimate(doc);
  } catch (error) {
    if (!estimateSequencer.isCurrent(token)) return;
    renderError(estimatePanel, error);
  }
}

async function runComparison(): Promise<void> {
  if (!isComparable(form)) return;
  const token = compareSequencer.begin();
  const providerFilter = compareProviderSelect.value || null;
  const metric = compareMetricSelect.value as Metric;
  try {
    const doc = await api.compare(toCompareBody(form, providerFilter, metric));
    if (!compareSequencer.isCurrent(token)) return;
    renderComparison(doc);
  } catch (error) {
    if (!compareSequencer.isCurrent(token)) return;
    renderError(comparePanel, error);
  }
}

async function reloadRegions(): Promise<void> {
  regionSelect.replaceChildren(new Option("choose a region", ""));
  if (!form.provider) return;
  const regions = await api.regions(form.provider);
  for (const region of regions) {
    const label = `${region.region_code} (${region.city}, ${region.country}; ${region.intensity_gco2_per_kwh} g/kWh)`;
    regionSelect.append(new Option(label, region.region_code));
  }
  if (regions.some((r) => r.region_code === form.region_code)) {
    regionSelect.value = form.region_code;
  } else {
    form = { ...form, region_code: "" };
  }
}

function numberOrNull(raw: string): number | null {
  if (raw.trim() === "") return null;
  const parsed = Number(raw);
  return Number.isFinite(parsed) ? parsed : Number.NaN;
}

function readForm(): void {
  form = {
    provider: providerSelect.value,
    region_code: regionSelect.value,
    hardware_name: hardwareSelect.value,
    device_count: numberOrNull(countInput.value),
    hours: numberOrNull(hoursInput.value),
    pue_override: numberOrNull(pueInput.value),
    utilization: numberOrNull(utilizationInput.value),
  };
}

function syncControls(): void {
  estimateButton.disabled = !isSubmittable(form);
  compareButton.disabled = !isComparable(form);
  const query = encodeForm(form);
  history.replaceState(null, "", query ? `?${query}` : window.location.pathname);
}

function writeFormToInputs(): void {
  countInput.value = form.device_count === null ? "" : String(form.device_count);
  hoursInput.value = form.hours === null ? "" : String(form.hours);
  pueInput.value = form.pue_override === null ? "" : String(form.pue_override);
  utilizationInput.value = form.utilization === null ? "" : String(form.utilization);
}

async function bootstrap(): Promise<void> {
  const [providerNames, hardware, health] = await Promise.all([
    api.providers(),
    api.hardware(),
    api.health(),
  ]);
  versionFooter.textContent = health.dataset_version;

  providerSelect.replaceChildren(new Option("choose a provider", ""));
  for (const name of providerNames) {
    providerSelect.append(new Option(name, name));
  }
  hardwareSelect.replaceChildren(new Option("choose hardware", ""));
  for (const profile of hardware) {
    const label = `${profile.name} (${profile.tdp_watts} W, ${profile.gflops32_per_watt ?? "?"} GFLOPS32/W)`;
    hardwareSelect.append(new Option(label, profile.name));
  }
  compareProviderSelect.replaceChildren(new Option("all providers", ""));
  for (const name of providerNames) {
    compareProviderSelect.append(new Option(name, name));
  }

  // Restore any permalink state.
  if (providerNames.includes(form.provider)) {
    providerSelect.value = form.provider;
    await reloadRegions();
  } else {
    form = { ...form, provider: "", region_code: "" };
  }
  if (hardware.some((h) => h.name === form.hardware_name)) {
    hardwareSelect.value = form.hardware_name;
  } else {
    form = { ...form, hardware_name: "" };
  }
  writeFormToInputs();
  syncControls();
  if (isSubmittable(form)) {
    void runEstimate();
  }
}

providerSelect.addEventListener("change", () => {
  readForm();
  void reloadRegions().then(syncControls);
});
for (const input of [regionSelect, hardwareSelect, countInput, hoursInput, pueInput, utilizationInput]) {
  input.addEventListener("input", () => {
    readForm();
    syncControls();
  });
  input.addEventListener("change", () => {
    readForm();
    syncControls();
  });
}
estimateButton.addEventListener("click", () => void runEstimate());
compareButton.addEventListener("click", () => void runComparison());

void bootstrap().catch((error) => renderError(estimatePanel, error));
