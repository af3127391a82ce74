// Application controller: owns the current screen, talks to the service
// through ApiClient, and keeps no authoritative state of its own - after a
// reload everything the API acknowledged is still on the server.

import { ApiClient, ApiFailure, type AnnotationKind } from "./api.js";
import { SessionState } from "./session.js";
import {
  addWordView,
  banner,
  completionView,
  credentialRequestView,
  guidelinesView,
  loginView,
  navView,
  taskView,
} from "./views.js";

export class App {
  constructor(
    private readonly root: HTMLElement,
    readonly api: ApiClient,
    readonly session: SessionState = new SessionState(),
  ) {}

  start(): void {
    const token = this.session.restore();
    if (token) {
      this.api.setToken(token);
      void this.showAnnotate("sense");
    } else {
      this.showLogin();
    }
  }

  private render(...nodes: HTMLElement[]): void {
    this.root.replaceChildren(...nodes);
  }

  private notice(kind: "error" | "success" | "info", message: string): void {
    this.root.querySelectorAll(".banner").forEach((node) => node.remove());
    this.root.prepend(banner(kind, message));
  }

  private loggedInChrome(): HTMLElement {
    return navView({
      onAnnotateSense: () => void this.showAnnotate("sense"),
      onAnnotatePolarity: () => void this.showAnnotate("polarity"),
      onAddWord: () => this.showAddWord(),
      onLogout: () => {
        this.session.clear();
        this.api.setToken(null);
        this.showLogin();
      },
    });
  }

  showLogin(): void {
    this.render(loginView({
      onLogin: (email, password) => void this.doLogin(email, password),
      onRequestCredentials: () => void this.showCredentialRequest(),
    }));
  }

  private async doLogin(email: string, password: string): Promise<void> {
    try {
      const result = await this.api.login(email, password);
      this.session.set(result.token);
      this.api.setToken(result.token);
      await this.showAnnotate("sense");
    } catch (error) {
      this.notice("error", describe(error));
    }
  }

  async showCredentialRequest(): Promise<void> {
    try {
      const { questions } = await this.api.quiz();
      this.render(credentialRequestView(questions, (form) => {
        // client-side validation only blocks obviously empty submissions;
        // the score is computed server-side
        if (!form.email) {
          this.notice("error", "Email is required.");
          return;
        }
        if (!form.name) {
          this.notice("error", "Name is required.");
          return;
        }
        if (form.quiz_answers.length !== questions.length) {
          this.notice("error", "Please answer every quiz question.");
          return;
        }
        void this.api.requestCredentials(form).then(
          (result) => this.notice("success",
            `Request ${result.request_id} is ${result.state}. ` +
            "You will receive credentials once an admin approves it."),
          (error) => this.notice("error", describe(error)),
        );
      }));
    } catch (error) {
      this.notice("error", describe(error));
    }
  }

  async showAnnotate(kind: AnnotationKind): Promise<void> {
    if (!this.session.hasSeenGuidelines) {
      try {
        const text = await this.api.guidelines();
        this.render(this.loggedInChrome(), guidelinesView(text, () => {
          this.session.markGuidelinesSeen();
          void this.showAnnotate(kind);
        }));
      } catch (error) {
        this.notice("error", describe(error));
      }
      return;
    }
    await this.advance(kind);
  }

  private async advance(kind: AnnotationKind): Promise<void> {
    try {
      const task = await this.api.nextTask(kind);
      this.render(this.loggedInChrome(), taskView(task, (picked) => {
        void this.api
          .submitAnnotation(task.word_id, kind, picked.primary, picked.secondary)
          .then(() => this.advance(kind))
          .catch((error) => {
            this.notice("error", describe(error));
            const button = this.root.querySelector<HTMLButtonElement>(
              "#task-form button[type=submit]");
            if (button) {
              button.disabled = false;
            }
          });
      }));
    } catch (error) {
      if (error instanceof ApiFailure && error.code === "NoTasksLeft") {
        this.render(this.loggedInChrome(), completionView(kind));
        return;
      }
      if (error instanceof ApiFailure && error.code === "InvalidSession") {
        this.session.clear();
        this.api.setToken(null);
        this.showLogin();
        this.notice("error", "Your session expired; please log in again.");
        return;
      }
      this.notice("error", describe(error));
    }
  }

  showAddWord(): void {
    this.render(this.loggedInChrome(), addWordView((surface, gloss, example) => {
      if (!surface || !gloss || !example) {
        this.notice("error", "Word, gloss, and example sentence are all required.");
        return;
      }
      void this.api.addWord(surface, gloss, example).then(
        (result) => this.notice("success",
          `Submission ${result.submission_id} is ${result.state}; ` +
          "it will appear after review."),
        (error) => this.notice("error", describe(error)),
      );
    }));
  }
}

function describe(error: unknown): string {
  if (error instanceof ApiFailure) {
    return error.message; // API errors surface verbatim
  }
  return error instanceof Error ? error.message : String(error);
}
