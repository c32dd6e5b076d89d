// Typed client for the traincarbon JSON API. Every number shown in the UI
// comes from these responses; nothing is computed client-side.

export interface RegionDoc {
  provider: string;
  region_code: string;
  country: string;
  city: string;
  intensity_gco2_per_kwh: number;
  offset_ratio: number;
  default_pue: number;
  source: string;
}

export interface HardwareDoc {
  name: string;
  kind: string;
  tdp_watts: number;
  tflops32: number;
  tflops16: number;
  gflops32_per_watt?: number;
  gflops16_per_watt?: number;
}

export interface EnergyDoc {
  device_kwh: number;
  overhead_kwh: number;
  total_kwh: number;
}

export interface EstimateBody {
  provider: string;
  region_code: string;
  hardware_name: string;
  device_count: number;
  hours: number;
  pue_override: number | null;
  utilization: number;
}

export interface EstimateDoc {
  request: EstimateBody;
  region: RegionDoc;
  energy: EnergyDoc;
  gross_gco2eq: number;
  offset_gco2eq: number;
  net_gco2eq: number;
  dataset_version: string;
}

export interface CompareBody {
  hardware_name: string;
  device_count: number;
  hours: number;
  pue_override: number | null;
  utilization: number;
  provider?: string | null;
  metric?: string;
}

export interface CompareRowDoc {
  rank: number;
  provider: string;
  region_code: string;
  country: string;
  city: string;
  intensity_gco2_per_kwh: number;
  total_kwh: number;
  gross_gco2eq: number;
  offset_gco2eq: number;
  net_gco2eq: number;
}

export interface CompareDoc {
  metric: string;
  results: CompareRowDoc[];
  worst_best_ratio: number | null;
  dataset_version: string;
}

export class ApiRequestError extends Error {
  readonly status: number;
  readonly code: string;
  readonly suggestions: string[];

  constructor(status: number, code: string, message: string, suggestions?: string[]) {
    super(message);
    this.status = status;
    this.code = code;
    this.suggestions = suggestions ?? [];
  }
}

async function parseError(response: Response): Promise<ApiRequestError> {
  let code = "internal";
  let message = `request failed with status ${response.status}`;
  let suggestions: string[] | undefined;
  try {
    const body = await response.json();
    if (typeof body.code === "string") code = body.code;
    if (typeof body.message === "string") message = body.message;
    if (Array.isArray(body.suggestions)) suggestions = body.suggestions;
  } catch {
    // non-JSON error body; keep the status-based message
  }
  return new ApiRequestError(response.status, code, message, suggestions);
}

export class ApiClient {
  constructor(private readonly baseUrl: string = "") {}

  private async get<T>(path: string): Promise<T> {
    const response = await fetch(this.baseUrl + path);
    if (!response.ok) throw await parseError(response);
    return response.json() as Promise<T>;
  }

  private async post<T>(path: string, body: unknown): Promise<T> {
    const response = await fetch(this.baseUrl + path, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    });
    if (!response.ok) throw await parseError(response);
    return response.json() as Promise<T>;
  }

  async health(): Promise<{ status: string; dataset_version: string }> {
    return this.get("/healthz");
  }

  async providers(): Promise<string[]> {
    const doc = await this.get<{ providers: string[] }>("/v1/providers");
    return doc.providers;
  }

  async regions(provider?: string): Promise<RegionDoc[]> {
    const query = provider ? `?provider=${encodeURIComponent(provider)}` : "";
    const doc = await this.get<{ regions: RegionDoc[] }>(`/v1/regions${query}`);
    return doc.regions;
  }

  async hardware(): Promise<HardwareDoc[]> {
    const doc = await this.get<{ hardware: HardwareDoc[] }>("/v1/hardware?efficiency=true");
    return doc.hardware;
  }

  async estimate(body: EstimateBody): Promise<EstimateDoc> {
    return this.post("/v1/estimate", body);
  }

  async compare(body: CompareBody): Promise<CompareDoc> {
    return this.post("/v1/compare", body);
  }
}
