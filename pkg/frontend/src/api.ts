// Typed client for the session service. The UI never computes quiver
// mathematics itself: everything rendered comes out of these responses.

export type QuiverData = {
  n: number;
  arrows: [number, number, number][];
};

export type SessionView = {
  id: string;
  quiver: QuiverData;
  origin: QuiverData;
  greens: number[];
  reds: number[];
  c_matrix: number[][];
  history: number[];
  all_red: boolean;
};

export type SeriesTerm = { exp: number[]; num: string[]; den: string[] };

export type DtResponse = {
  degree: number;
  history: number[];
  factors: { beta: number[]; eps: number }[];
  series: SeriesTerm[];
};

export type CatalogEntry = {
  name: string;
  description: string;
  quiver: QuiverData;
  sequences: number[][];
};

export type VerifyResponse = {
  equal: boolean;
  witness?: { exp: number[]; lhs: string; rhs: string };
};

export class ApiError extends Error {
  constructor(public status: number, detail: string) {
    super(detail);
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

async function unwrap<T>(response: Response): Promise<T> {
  if (!response.ok) {
    let detail = `${response.status}`;
    try {
      const body = await response.json();
      detail = typeof body.detail === "string" ? body.detail : JSON.stringify(body.detail);
    } catch {
      /* keep the status text */
    }
    throw new ApiError(response.status, detail);
  }
  return (await response.json()) as T;
}

export class ApiClient {
  constructor(
    private baseUrl: string = "",
    private fetchFn: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private post<T>(path: string, body: unknown): Promise<T> {
    return this.fetchFn(this.baseUrl + path, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    }).then((r) => unwrap<T>(r));
  }

  createSession(quiver: QuiverData): Promise<SessionView> {
    return this.post("/sessions", { quiver });
  }

  createSessionFromFixture(name: string): Promise<SessionView> {
    return this.post("/sessions", { fixture: name });
  }

  getSession(id: string): Promise<SessionView> {
    return this.fetchFn(`${this.baseUrl}/sessions/${id}`).then((r) => unwrap<SessionView>(r));
  }

  mutate(id: string, vertex: number): Promise<SessionView> {
    return this.post(`/sessions/${id}/mutations`, { vertex });
  }

  undo(id: string): Promise<SessionView> {
    return this.fetchFn(`${this.baseUrl}/sessions/${id}/mutations/last`, {
      method: "DELETE",
    }).then((r) => unwrap<SessionView>(r));
  }

  dt(id: string, degree: number): Promise<DtResponse> {
    return this.fetchFn(`${this.baseUrl}/sessions/${id}/dt?degree=${degree}`).then((r) =>
      unwrap<DtResponse>(r),
    );
  }

  catalog(): Promise<CatalogEntry[]> {
    return this.fetchFn(`${this.baseUrl}/catalog`).then((r) => unwrap<CatalogEntry[]>(r));
  }

  verify(
    quiver: QuiverData,
    seqA: number[],
    seqB: number[],
    degree: number,
  ): Promise<VerifyResponse> {
    return this.post("/verify", { quiver, seqA, seqB, degree });
  }
}
