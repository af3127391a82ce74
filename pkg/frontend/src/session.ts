// Session token handling: kept in memory and mirrored to sessionStorage so a
// reload inside the same tab keeps the login. No cookies.

const STORAGE_KEY = "senselex.token";

function storage(): Storage | null {
  try {
    return typeof window !== "undefined" ? window.sessionStorage : null;
  } catch {
    return null;
  }
}

export class SessionState {
  private token: string | null = null;
  private guidelinesSeen = false;

  restore(): string | null {
    const saved = storage()?.getItem(STORAGE_KEY) ?? null;
    if (saved) {
      this.token = saved;
    }
    return this.token;
  }

  get(): string | null {
    return this.token;
  }

  set(token: string): void {
    this.token = token;
    storage()?.setItem(STORAGE_KEY, token);
  }

  clear(): void {
    this.token = null;
    this.guidelinesSeen = false;
    storage()?.removeItem(STORAGE_KEY);
  }

  get hasSeenGuidelines(): boolean {
    return this.guidelinesSeen;
  }

  markGuidelinesSeen(): void {
    this.guidelinesSeen = true;
  }
}
