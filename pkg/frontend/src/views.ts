// Screen builders. Plain DOM, no framework: each function returns a detached
// element tree wired to the callbacks it was given. Tag dropdowns are built
// exclusively from the task payload's allowed_tags.

import type { AnnotationTask, QuizQuestion } from "./api.js";

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [key, value] of Object.entries(attrs)) {
    node.setAttribute(key, value);
  }
  if (text !== undefined) {
    node.textContent = text;
  }
  return node;
}

export function banner(kind: "error" | "success" | "info", message: string): HTMLElement {
  return el("div", { class: `banner ${kind}`, role: "status" }, message);
}

function labeledInput(labelText: string, name: string, type = "text"): HTMLElement {
  const wrap = el("label", { class: "field" });
  wrap.append(el("span", {}, labelText), el("input", { name, type }));
  return wrap;
}

export function tagSelect(name: string, options: string[]): HTMLSelectElement {
  const select = el("select", { name });
  for (const tag of options) {
    select.append(el("option", { value: tag }, tag));
  }
  return select;
}

export interface LoginHandlers {
  onLogin: (email: string, password: string) => void;
  onRequestCredentials: () => void;
}

export function loginView(handlers: LoginHandlers): HTMLElement {
  const root = el("section", { class: "screen", id: "login-screen" });
  root.append(el("h1", {}, "Sign in"));
  const form = el("form", { id: "login-form" });
  form.append(
    labeledInput("Email", "email", "email"),
    labeledInput("Password", "password", "password"),
    el("button", { type: "submit" }, "Log in"),
  );
  form.addEventListener("submit", (event) => {
    event.preventDefault();
    const data = new FormData(form);
    handlers.onLogin(String(data.get("email") ?? ""), String(data.get("password") ?? ""));
  });
  const requestLink = el("button", { type: "button", id: "goto-request" },
    "No account? Request credentials");
  requestLink.addEventListener("click", handlers.onRequestCredentials);
  root.append(form, requestLink);
  return root;
}

export interface CredentialFormResult {
  name: string;
  email: string;
  profession: string;
  education: string;
  quiz_answers: number[];
}

export function credentialRequestView(
  questions: QuizQuestion[],
  onSubmit: (form: CredentialFormResult) => void,
): HTMLElement {
  const root = el("section", { class: "screen", id: "request-screen" });
  root.append(
    el("h1", {}, "Request credentials"),
    el("p", {}, "Your quiz answers set your annotator proficiency score."),
  );
  const form = el("form", { id: "request-form" });
  form.append(
    labeledInput("Name", "name"),
    labeledInput("Email", "email", "email"),
    labeledInput("Profession", "profession"),
    labeledInput("Education", "education"),
  );
  questions.forEach((q, index) => {
    const box = el("fieldset", { class: "quiz-question" });
    box.append(el("legend", {}, `${index + 1}. ${q.question}`));
    q.options.forEach((option, optionIndex) => {
      const label = el("label", { class: "option" });
      const radio = el("input", {
        type: "radio",
        name: `q${index}`,
        value: String(optionIndex),
      });
      label.append(radio, el("span", {}, option));
      box.append(label);
    });
    form.append(box);
  });
  form.append(el("button", { type: "submit" }, "Submit request"));
  form.addEventListener("submit", (event) => {
    event.preventDefault();
    const data = new FormData(form);
    const answers: number[] = [];
    questions.forEach((_, index) => {
      const picked = data.get(`q${index}`);
      if (picked !== null) {
        answers.push(Number(picked));
      }
    });
    onSubmit({
      name: String(data.get("name") ?? "").trim(),
      email: String(data.get("email") ?? "").trim(),
      profession: String(data.get("profession") ?? "").trim(),
      education: String(data.get("education") ?? "").trim(),
      quiz_answers: answers,
    });
  });
  root.append(form);
  return root;
}

export function guidelinesView(text: string, onContinue: () => void): HTMLElement {
  const root = el("section", { class: "screen", id: "guidelines-screen" });
  root.append(el("h1", {}, "Annotation guidelines"));
  root.append(el("pre", { class: "guidelines" }, text));
  const button = el("button", { type: "button", id: "guidelines-continue" },
    "I have read the guidelines — start annotating");
  button.addEventListener("click", onContinue);
  root.append(button);
  return root;
}

export interface TaskSubmission {
  primary: string;
  secondary?: string;
}

export function taskView(
  task: AnnotationTask,
  onSubmit: (picked: TaskSubmission) => void,
): HTMLElement {
  const root = el("section", { class: "screen", id: "task-screen" });
  root.append(
    el("h1", {}, task.kind === "sense" ? "Sense annotation" : "Polarity annotation"),
    el("p", { class: "word-surface" }, task.surface),
    el("p", { class: "word-pos" }, `part of speech: ${task.pos}`),
  );
  const glosses = el("ul", { class: "glosses" });
  for (const gloss of task.glosses) {
    glosses.append(el("li", {}, gloss));
  }
  root.append(glosses);
  if (task.example) {
    root.append(el("p", { class: "example" }, `“${task.example}”`));
  }

  const form = el("form", { id: "task-form" });
  const primary = tagSelect("primary", task.allowed_tags.primary);
  const primaryLabel = el("label", { class: "field" });
  primaryLabel.append(
    el("span", {}, task.kind === "sense" ? "Primary sense" : "Polarity"),
    primary,
  );
  form.append(primaryLabel);

  let secondary: HTMLSelectElement | null = null;
  if (task.allowed_tags.secondary) {
    secondary = tagSelect("secondary", task.allowed_tags.secondary);
    const secondaryLabel = el("label", { class: "field" });
    secondaryLabel.append(el("span", {}, "Secondary sense"), secondary);
    form.append(secondaryLabel);
  }
  const submit = el("button", { type: "submit" }, "Submit and next");
  form.append(submit);
  form.addEventListener("submit", (event) => {
    event.preventDefault();
    submit.disabled = true; // one in-flight submission at a time
    onSubmit({
      primary: primary.value,
      secondary: secondary ? secondary.value : undefined,
    });
  });
  root.append(form);
  return root;
}

export function completionView(kind: string): HTMLElement {
  const root = el("section", { class: "screen", id: "done-screen" });
  root.append(
    el("h1", {}, "All caught up"),
    el("p", {}, `No ${kind} tasks left for you right now — thank you!`),
  );
  return root;
}

export function addWordView(
  onSubmit: (surface: string, gloss: string, example: string) => void,
): HTMLElement {
  const root = el("section", { class: "screen", id: "add-word-screen" });
  root.append(
    el("h1", {}, "Add a word"),
    el("p", {}, "New words are reviewed before they join the lexicon."),
  );
  const form = el("form", { id: "add-word-form" });
  form.append(
    labeledInput("Word", "surface"),
    labeledInput("Gloss (meaning)", "gloss"),
    labeledInput("Example sentence", "example"),
    el("button", { type: "submit" }, "Submit word"),
  );
  form.addEventListener("submit", (event) => {
    event.preventDefault();
    const data = new FormData(form);
    onSubmit(
      String(data.get("surface") ?? "").trim(),
      String(data.get("gloss") ?? "").trim(),
      String(data.get("example") ?? "").trim(),
    );
  });
  root.append(form);
  return root;
}

export interface NavHandlers {
  onAnnotateSense: () => void;
  onAnnotatePolarity: () => void;
  onAddWord: () => void;
  onLogout: () => void;
}

export function navView(handlers: NavHandlers): HTMLElement {
  const nav = el("nav", { class: "main-nav" });
  const buttons: Array<[string, string, () => void]> = [
    ["nav-sense", "Sense tasks", handlers.onAnnotateSense],
    ["nav-polarity", "Polarity tasks", handlers.onAnnotatePolarity],
    ["nav-add-word", "Add a word", handlers.onAddWord],
    ["nav-logout", "Log out", handlers.onLogout],
  ];
  for (const [id, label, onClick] of buttons) {
    const button = el("button", { type: "button", id }, label);
    button.addEventListener("click", onClick);
    nav.append(button);
  }
  return nav;
}
