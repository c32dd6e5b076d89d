// Form state, client-side validation mirror, permalink codec, and the
// request sequencing guard. The server stays authoritative: validation here
// only gates the submit button, it never computes emissions.

import type { CompareBody, EstimateBody } from "./api.js";

export interface FormState {
  provider: string;
  region_code: string;
  hardware_name: string;
  device_count: number | null;
  hours: number | null;
  pue_override: number | null;
  utilization: number | null;
}

export interface FieldError {
  field: keyof FormState;
  message: string;
}

export const DEFAULT_FORM: FormState = {
  provider: "",
  region_code: "",
  hardware_name: "",
  device_count: 1,
  hours: null,
  pue_override: null,
  utilization: null,
};

function isFiniteNumber(value: number | null): value is number {
  return value !== null && Number.isFinite(value);
}

/** Mirror of the estimate-request invariants, minus the region fields. */
export function workloadErrors(form: FormState): FieldError[] {
  const errors: FieldError[] = [];
  if (!form.hardware_name) {
    errors.push({ field: "hardware_name", message: "choose a hardware profile" });
  }
  if (!isFiniteNumber(form.device_count) || !Number.isInteger(form.device_count) || form.device_count < 1) {
    errors.push({ field: "device_count", message: "device count must be a whole number of at least 1" });
  }
  if (!isFiniteNumber(form.hours) || form.hours <= 0) {
    errors.push({ field: "hours", message: "training time must be more than 0 hours" });
  }
  if (form.pue_override !== null && (!Number.isFinite(form.pue_override) || form.pue_override < 1)) {
    errors.push({ field: "pue_override", message: "PUE must be at least 1.0" });
  }
  if (form.utilization !== null && (!Number.isFinite(form.utilization) || form.utilization <= 0 || form.utilization > 1)) {
    errors.push({ field: "utilization", message: "utilization must be between 0 (exclusive) and 1" });
  }
  return errors;
}

export function validateForm(form: FormState): FieldError[] {
  const errors = workloadErrors(form);
  if (!form.provider) {
    errors.push({ field: "provider", message: "choose a provider" });
  }
  if (!form.region_code) {
    errors.push({ field: "region_code", message: "choose a region" });
  }
  return errors;
}

export function isSubmittable(form: FormState): boolean {
  return validateForm(form).length === 0;
}

/** The comparison view only needs the workload, not a chosen region. */
export function isComparable(form: FormState): boolean {
  return workloadErrors(form).length === 0;
}

export function toEstimateBody(form: FormState): EstimateBody {
  if (!isSubmittable(form)) {
    throw new Error("form state is not submittable");
  }
  return {
    provider: form.provider,
    region_code: form.region_code,
    hardware_name: form.hardware_name,
    device_count: form.device_count as number,
    hours: form.hours as number,
    pue_override: form.pue_override,
    utilization: form.utilization ?? 1.0,
  };
}

export function toCompareBody(
  form: FormState,
  providerFilter: string | null,
  metric: string,
): CompareBody {
  if (!isComparable(form)) {
    throw new Error("form state is not comparable");
  }
  return {
    hardware_name: form.hardware_name,
    device_count: form.device_count as number,
    hours: form.hours as number,
    pue_override: form.pue_override,
    utilization: form.utilization ?? 1.0,
    provider: providerFilter,
    metric,
  };
}

/** The what-if loop: clicking a comparison bar writes that region back. */
export function applyRegionChoice(form: FormState, provider: string, regionCode: string): FormState {
  return { ...form, provider, region_code: regionCode };
}

// ---------------------------------------------------------------------------
// Permalink codec: FormState <-> URL query string
// ---------------------------------------------------------------------------

const NUMBER_FIELDS = ["device_count", "hours", "pue_override", "utilization"] as const;
const STRING_FIELDS = ["provider", "region_code", "hardware_name"] as const;

export function encodeForm(form: FormState): string {
  const params = new URLSearchParams();
  for (const field of STRING_FIELDS) {
    if (form[field]) params.set(field, form[field]);
  }
  for (const field of NUMBER_FIELDS) {
    const value = form[field];
    if (value !== null) params.set(field, String(value));
  }
  return params.toString();
}

export function decodeForm(query: string): FormState {
  const params = new URLSearchParams(query);
  const form: FormState = { ...DEFAULT_FORM };
  for (const field of STRING_FIELDS) {
    const raw = params.get(field);
    if (raw !== null) form[field] = raw;
  }
  for (const field of NUMBER_FIELDS) {
    const raw = params.get(field);
    if (raw !== null && raw !== "") {
      const parsed = Number(raw);
      if (Number.isFinite(parsed)) form[field] = parsed;
    }
  }
  return form;
}

// ---------------------------------------------------------------------------
// Stale-response guard: one in-flight request per panel wins
// ---------------------------------------------------------------------------

export class RequestSequencer {
  private sequence = 0;

  begin(): number {
    return ++this.sequence;
  }

  isCurrent(token: number): boolean {
    return token === this.sequence;
  }
}
