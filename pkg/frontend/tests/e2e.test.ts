// End-to-end: drive the real UI code (under jsdom) against a live
// annotation service spawned from this repository. Covers credential
// request, login, one verb annotation (8-option dropdowns), one polarity
// annotation (4 options), and one add-a-word submission.

import assert from "node:assert/strict";
import { spawn, spawnSync, type ChildProcess } from "node:child_process";
import { existsSync, mkdtempSync, readFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { dirname, join, resolve } from "node:path";
import { after, before, test } from "node:test";

import { JSDOM } from "jsdom";

function findRepoRoot(): string {
  // walk up from the (compiled) test file until the service fixtures appear
  let dir = import.meta.dirname ?? resolve(".");
  for (let hops = 0; hops < 6; hops++) {
    if (existsSync(join(dir, "fixtures", "quiz.json"))) {
      return dir;
    }
    dir = dirname(dir);
  }
  throw new Error("repository root with fixtures/quiz.json not found");
}

const REPO = findRepoRoot();
const PORT = 18000 + Math.floor(Math.random() * 2000);
const BASE = `http://127.0.0.1:${PORT}`;
const ADMIN_EMAIL = "admin@senselex.local";
const ADMIN_PASSWORD = "e2e-admin-pw";
const QUIZ_ANSWERS = [0, 1, 2, 0, 3];   // fixtures/quiz.json answer key

let service: ChildProcess | null = null;
let storeDir = "";
let root: HTMLElement;
let app: import("../src/app.js").App;

function pythonAvailable(): boolean {
  const probe = spawnSync("python3", ["-c", "import senselex"],
                          { cwd: REPO, timeout: 30000 });
  return probe.status === 0;
}

const HAVE_PYTHON = pythonAvailable();

async function waitForService(): Promise<void> {
  for (let attempt = 0; attempt < 100; attempt++) {
    try {
      const res = await fetch(`${BASE}/api/quiz`);
      if (res.ok) {
        return;
      }
    } catch {
      // not up yet
    }
    await new Promise((r) => setTimeout(r, 100));
  }
  throw new Error("service did not come up");
}

async function waitFor<T>(probe: () => T | null, what: string,
                          timeoutMs = 5000): Promise<T> {
  const deadline = Date.now() + timeoutMs;
  while (Date.now() < deadline) {
    const result = probe();
    if (result) {
      return result;
    }
    await new Promise((r) => setTimeout(r, 25));
  }
  throw new Error(`timed out waiting for ${what}; current DOM: `
    + root.innerHTML.slice(0, 500));
}

function submit(form: HTMLFormElement): void {
  form.dispatchEvent(new Event("submit", { bubbles: true, cancelable: true }));
}

function setInput(name: string, value: string): void {
  const input = root.querySelector<HTMLInputElement>(`input[name=${name}]`);
  assert.ok(input, `input ${name} present`);
  input.value = value;
}

async function adminFetch(path: string, body: unknown,
                          token: string): Promise<Record<string, unknown>> {
  const res = await fetch(BASE + path, {
    method: "POST",
    headers: { "Content-Type": "application/json",
               Authorization: `Bearer ${token}` },
    body: JSON.stringify(body),
  });
  assert.ok(res.ok, `${path} -> ${res.status}`);
  return (await res.json()) as Record<string, unknown>;
}

before(async () => {
  if (!HAVE_PYTHON) {
    return;
  }
  storeDir = mkdtempSync(join(tmpdir(), "senselex-e2e-"));
  service = spawn("python3", ["-m", "senselex.cli", "serve"], {
    cwd: REPO,
    env: {
      ...process.env,
      SENSELEX_HOST: "127.0.0.1",
      SENSELEX_PORT: String(PORT),
      SENSELEX_STORE_DIR: storeDir,
      SENSELEX_QUIZ_BANK: join(REPO, "fixtures", "quiz.json"),
      SENSELEX_GUIDELINES: join(REPO, "fixtures", "guidelines.md"),
      SENSELEX_ADMIN_EMAIL: ADMIN_EMAIL,
      SENSELEX_ADMIN_PASSWORD: ADMIN_PASSWORD,
    },
    stdio: "ignore",
  });
  await waitForService();

  const dom = new JSDOM("<!doctype html><div id='app'></div>",
                        { url: BASE + "/" });
  Object.assign(globalThis, {
    window: dom.window,
    document: dom.window.document,
    FormData: dom.window.FormData,
    Event: dom.window.Event,
  });
  const { ApiClient } = await import("../src/api.js");
  const { App } = await import("../src/app.js");
  root = document.getElementById("app")!;
  app = new App(root, new ApiClient(BASE));
});

after(() => {
  service?.kill();
});

test("scripted run: request, approve, login, annotate, add a word",
     { skip: !HAVE_PYTHON && "python3 + senselex not available" },
     async () => {
  // --- credential request with the proficiency quiz
  app.start();
  root.querySelector<HTMLButtonElement>("#goto-request")!.click();
  await waitFor(() => root.querySelector("#request-form"), "request form");
  assert.equal(root.querySelectorAll(".quiz-question").length, 5);
  setInput("name", "E2E Ann");
  setInput("email", "e2e@x");
  setInput("profession", "linguist");
  setInput("education", "MA");
  QUIZ_ANSWERS.forEach((answer, index) => {
    root.querySelector<HTMLInputElement>(
      `input[name=q${index}][value='${answer}']`)!.checked = true;
  });
  submit(root.querySelector<HTMLFormElement>("#request-form")!);
  const requestBanner = await waitFor(
    () => root.querySelector(".banner.success"), "pending banner");
  const requestId = /Request (r\d+)/.exec(requestBanner.textContent!)?.[1];
  assert.ok(requestId, "request id shown");
  assert.match(requestBanner.textContent!, /pending/);

  // --- an admin approves out of band (the UI has no admin screens)
  const adminLogin = await fetch(`${BASE}/api/login`, {
    method: "POST",
    headers: { "Content-Type": "application/json" },
    body: JSON.stringify({ email: ADMIN_EMAIL, password: ADMIN_PASSWORD }),
  });
  const adminToken = ((await adminLogin.json()) as { token: string }).token;
  await adminFetch(`/api/requests/${requestId}/approve`, {}, adminToken);

  // credentials are delivered via the outbox file
  const outbox = readFileSync(join(storeDir, "outbox.jsonl"), "utf-8")
    .trim().split("\n").map((line) => JSON.parse(line));
  const mail = outbox.reverse().find((m) => m.to === "e2e@x");
  const password = /password: (\S+)/.exec(mail.body)![1];

  // --- login through the UI form
  app.showLogin();
  setInput("email", "e2e@x");
  setInput("password", password);
  submit(root.querySelector<HTMLFormElement>("#login-form")!);

  // guidelines gate before the first task
  const gate = await waitFor(
    () => root.querySelector<HTMLButtonElement>("#guidelines-continue"),
    "guidelines gate");
  assert.match(root.querySelector(".guidelines")!.textContent!, /sense-type/);
  gate.click();

  // empty lexicon: completion screen
  await waitFor(() => root.querySelector("#done-screen"), "completion screen");

  // --- add a word through the UI
  root.querySelector<HTMLButtonElement>("#nav-add-word")!.click();
  await waitFor(() => root.querySelector("#add-word-form"), "add-word form");
  setInput("surface", "velladu");
  setInput("gloss", "to go");
  setInput("example", "vaadu intiki velladu");
  submit(root.querySelector<HTMLFormElement>("#add-word-form")!);
  const queued = await waitFor(
    () => root.querySelector(".banner.success"), "queued banner");
  const submissionId = /Submission (s\d+)/.exec(queued.textContent!)?.[1];
  assert.ok(submissionId);
  assert.match(queued.textContent!, /queued/);

  // admin accepts the submission as a verb
  await adminFetch(`/api/submissions/${submissionId}/review`,
                   { decision: "accept", pos: "verb" }, adminToken);

  // --- one verb sense annotation: two dropdowns, 8 options each
  root.querySelector<HTMLButtonElement>("#nav-sense")!.click();
  await waitFor(() => root.querySelector("#task-form"), "sense task");
  const selects = root.querySelectorAll("select");
  assert.equal(selects.length, 2);
  for (const select of selects) {
    assert.equal(select.querySelectorAll("option").length, 8);
    assert.ok([...select.querySelectorAll("option")]
      .some((o) => o.value === "Uncertain"));
  }
  assert.equal(root.querySelector(".word-surface")!.textContent, "velladu");
  selects[0].value = "ToMove";
  selects[1].value = "ToDo";
  submit(root.querySelector<HTMLFormElement>("#task-form")!);
  await waitFor(() => root.querySelector("#done-screen"),
                "auto-advance to completion");

  // --- one polarity annotation: a single 4-option dropdown
  root.querySelector<HTMLButtonElement>("#nav-polarity")!.click();
  await waitFor(() => root.querySelector("#task-form"), "polarity task");
  const polaritySelects = root.querySelectorAll("select");
  assert.equal(polaritySelects.length, 1);
  assert.deepEqual(
    [...polaritySelects[0].querySelectorAll("option")].map((o) => o.value),
    ["Positive", "Negative", "Neutral", "Uncertain"]);
  polaritySelects[0].value = "Positive";
  submit(root.querySelector<HTMLFormElement>("#task-form")!);
  await waitFor(() => root.querySelector("#done-screen"),
                "polarity completion");

  // --- the service really recorded both annotations
  const exportRes = await fetch(`${BASE}/api/export`);
  const lines = (await exportRes.text()).trim().split("\n")
    .map((line) => JSON.parse(line));
  const senseLine = lines.find((l) => l.resolved?.kind === "sense");
  const polarityLine = lines.find((l) => l.resolved?.kind === "polarity");
  assert.equal(senseLine.resolved.primary, "ToMove");
  assert.equal(senseLine.resolved.secondary, "ToDo");
  assert.equal(polarityLine.resolved.primary, "Positive");
});
