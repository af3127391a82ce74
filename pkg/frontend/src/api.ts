// Typed client for the annotation service. Every tag list shown in the UI
// comes from these payloads; the client never invents tags.

export interface ApiError {
  code: string;
  message: string;
}

export class ApiFailure extends Error {
  readonly code: string;
  readonly status: number;

  constructor(status: number, body: ApiError) {
    super(body.message);
    this.code = body.code;
    this.status = status;
  }
}

export interface QuizQuestion {
  question: string;
  options: string[];
}

export interface CredentialRequestPayload {
  name: string;
  email: string;
  profession: string;
  education: string;
  quiz_answers: number[];
}

export interface CredentialRequestResult {
  request_id: string;
  state: string;
}

export interface LoginResult {
  token: string;
  annotator_id: string;
  expires_at: number;
}

export type AnnotationKind = "sense" | "polarity";

export interface AnnotationTask {
  word_id: string;
  surface: string;
  glosses: string[];
  example: string;
  kind: AnnotationKind;
  pos: "verb" | "adverb" | "adjective";
  allowed_tags: { primary: string[]; secondary?: string[] };
}

export interface AnnotationAck {
  word_id: string;
  kind: AnnotationKind;
  annotations: number;
  status: string;
  resolved: { primary: string; secondary: string | null; resolution: string } | null;
}

export interface SubmissionResult {
  submission_id: string;
  state: string;
}

async function readError(res: Response): Promise<ApiError> {
  try {
    const body = await res.json();
    if (body && typeof body.code === "string") {
      return body as ApiError;
    }
  } catch {
    // fall through to the generic error below
  }
  return { code: "HttpError", message: `request failed with ${res.status}` };
}

export class ApiClient {
  constructor(
    private readonly base: string = "",
    private token: string | null = null,
  ) {}

  setToken(token: string | null): void {
    this.token = token;
  }

  private headers(): Record<string, string> {
    const headers: Record<string, string> = { "Content-Type": "application/json" };
    if (this.token) {
      headers["Authorization"] = `Bearer ${this.token}`;
    }
    return headers;
  }

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const res = await fetch(this.base + path, {
      method,
      headers: this.headers(),
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    if (!res.ok) {
      throw new ApiFailure(res.status, await readError(res));
    }
    return (await res.json()) as T;
  }

  quiz(): Promise<{ questions: QuizQuestion[] }> {
    return this.request("GET", "/api/quiz");
  }

  requestCredentials(payload: CredentialRequestPayload): Promise<CredentialRequestResult> {
    return this.request("POST", "/api/credential-requests", payload);
  }

  login(email: string, password: string): Promise<LoginResult> {
    return this.request("POST", "/api/login", { email, password });
  }

  async guidelines(): Promise<string> {
    const res = await fetch(this.base + "/api/guidelines");
    if (!res.ok) {
      throw new ApiFailure(res.status, await readError(res));
    }
    return res.text();
  }

  nextTask(kind: AnnotationKind, pos?: string): Promise<AnnotationTask> {
    const query = pos ? `?kind=${kind}&pos=${pos}` : `?kind=${kind}`;
    return this.request("GET", `/api/tasks/next${query}`);
  }

  submitAnnotation(
    wordId: string,
    kind: AnnotationKind,
    primaryTag: string,
    secondaryTag?: string,
  ): Promise<AnnotationAck> {
    const payload: Record<string, unknown> = {
      word_id: wordId,
      kind,
      primary_tag: primaryTag,
    };
    if (secondaryTag !== undefined) {
      payload["secondary_tag"] = secondaryTag;
    }
    return this.request("POST", "/api/annotations", payload);
  }

  addWord(surface: string, gloss: string, example: string): Promise<SubmissionResult> {
    return this.request("POST", "/api/words", { surface, gloss, example });
  }
}
