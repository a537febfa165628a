// Thin typed client for the consultation service. The UI talks to the
// backend exclusively through these calls.

export interface Question {
  attribute: string;
  menu: string[];
}

export interface Conclusion {
  class: string;
  probability: number;
}

export interface SessionState {
  session_id?: string;
  status: "awaiting" | "concluded" | "failed" | "aborted";
  question?: Question;
  conclusion?: Conclusion;
}

export interface Explanation {
  conclusion: Conclusion | null;
  known: string[];
}

export class ApiError extends Error {
  constructor(
    public status: number,
    public code: string,
    message: string,
  ) {
    super(message);
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

async function unwrap<T>(response: Response): Promise<T> {
  if (response.ok) {
    return (await response.json()) as T;
  }
  let code = "error";
  let message = `${response.status}`;
  try {
    const body = await response.json();
    if (body && body.error) {
      code = body.error.code ?? code;
      message = body.error.message ?? message;
    }
  } catch {
    // non-JSON error body: keep the status text
  }
  throw new ApiError(response.status, code, message);
}

export class ServiceClient {
  constructor(
    private baseUrl: string,
    private fetchFn: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private post(path: string, body: string, contentType: string): Promise<Response> {
    return this.fetchFn(`${this.baseUrl}${path}`, {
      method: "POST",
      headers: { "Content-Type": contentType },
      body,
    });
  }

  async uploadKb(text: string): Promise<string> {
    const body = await unwrap<{ id: string }>(await this.post("/kbs", text, "text/plain"));
    return body.id;
  }

  async createSession(kbId: string): Promise<SessionState> {
    return unwrap(await this.post("/sessions", JSON.stringify({ kb: kbId }), "application/json"));
  }

  async answer(sessionId: string, value: string): Promise<SessionState> {
    return unwrap(
      await this.post(
        `/sessions/${sessionId}/answer`,
        JSON.stringify({ value }),
        "application/json",
      ),
    );
  }

  async explanation(sessionId: string): Promise<Explanation> {
    return unwrap(await this.fetchFn(`${this.baseUrl}/sessions/${sessionId}/explanation`));
  }
}
