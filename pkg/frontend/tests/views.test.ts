// DOM-level tests for the screen builders, under jsdom.

import assert from "node:assert/strict";
import { before, test } from "node:test";

import { JSDOM } from "jsdom";

before(() => {
  const dom = new JSDOM("<!doctype html><body></body>", { url: "http://ui.local/" });
  Object.assign(globalThis, {
    window: dom.window,
    document: dom.window.document,
    FormData: dom.window.FormData,
    Event: dom.window.Event,
  });
});

function submitForm(form: HTMLFormElement): void {
  form.dispatchEvent(new Event("submit", { bubbles: true, cancelable: true }));
}

const VERB_TASK = {
  word_id: "w1",
  surface: "velladu",
  glosses: ["to go"],
  example: "vaadu velladu",
  kind: "sense" as const,
  pos: "verb" as const,
  allowed_tags: {
    primary: ["ToKnow", "ToMove", "ToDo", "ToHave", "ToBe", "ToCut", "ToBound",
              "Uncertain"],
    secondary: ["ToKnow", "ToMove", "ToDo", "ToHave", "ToBe", "ToCut", "ToBound",
                "Uncertain"],
  },
};

test("verb task renders two dropdowns mirroring allowed_tags exactly", async () => {
  const { taskView } = await import("../src/views.js");
  const view = taskView(VERB_TASK, () => {});
  const selects = view.querySelectorAll("select");
  assert.equal(selects.length, 2);
  for (const select of selects) {
    const options = [...select.querySelectorAll("option")].map((o) => o.value);
    assert.deepEqual(options, VERB_TASK.allowed_tags.primary);
    assert.equal(options.length, 8);
  }
});

test("polarity task renders one dropdown with the four labels", async () => {
  const { taskView } = await import("../src/views.js");
  const task = {
    ...VERB_TASK,
    kind: "polarity" as const,
    allowed_tags: { primary: ["Positive", "Negative", "Neutral", "Uncertain"] },
  };
  const view = taskView(task, () => {});
  const selects = view.querySelectorAll("select");
  assert.equal(selects.length, 1);
  assert.deepEqual([...selects[0].querySelectorAll("option")].map((o) => o.value),
                   ["Positive", "Negative", "Neutral", "Uncertain"]);
});

test("task submit reports the picked tags and disables the button", async () => {
  const { taskView } = await import("../src/views.js");
  let picked: { primary: string; secondary?: string } | null = null;
  const view = taskView(VERB_TASK, (p) => { picked = p; });
  document.body.replaceChildren(view);
  const [primary, secondary] = [...view.querySelectorAll("select")];
  primary.value = "ToMove";
  secondary.value = "ToDo";
  const form = view.querySelector("form")!;
  submitForm(form);
  assert.deepEqual(picked, { primary: "ToMove", secondary: "ToDo" });
  assert.equal(view.querySelector<HTMLButtonElement>(
    "button[type=submit]")!.disabled, true);
});

test("credential form collects profile and quiz answers", async () => {
  const { credentialRequestView } = await import("../src/views.js");
  const questions = [
    { question: "pick a", options: ["a", "b"] },
    { question: "pick b", options: ["a", "b"] },
  ];
  const seen: Array<{ email: string; quiz_answers: number[] }> = [];
  const view = credentialRequestView(questions, (form) => { seen.push(form); });
  document.body.replaceChildren(view);
  view.querySelector<HTMLInputElement>("input[name=name]")!.value = "Ann";
  view.querySelector<HTMLInputElement>("input[name=email]")!.value = "ann@x";
  view.querySelector<HTMLInputElement>("input[name=q0][value='0']")!.checked = true;
  view.querySelector<HTMLInputElement>("input[name=q1][value='1']")!.checked = true;
  submitForm(view.querySelector("form")!);
  assert.equal(seen.length, 1);
  assert.equal(seen[0].email, "ann@x");
  assert.deepEqual(seen[0].quiz_answers, [0, 1]);
});

test("add-word form trims and reports all three fields", async () => {
  const { addWordView } = await import("../src/views.js");
  let got: string[] | null = null;
  const view = addWordView((surface, gloss, example) => {
    got = [surface, gloss, example];
  });
  document.body.replaceChildren(view);
  view.querySelector<HTMLInputElement>("input[name=surface]")!.value = " kotha ";
  view.querySelector<HTMLInputElement>("input[name=gloss]")!.value = "new";
  view.querySelector<HTMLInputElement>("input[name=example]")!.value = "ex";
  submitForm(view.querySelector("form")!);
  assert.deepEqual(got, ["kotha", "new", "ex"]);
});

test("guidelines view gates on the continue button", async () => {
  const { guidelinesView } = await import("../src/views.js");
  let advanced = false;
  const view = guidelinesView("read me", () => { advanced = true; });
  assert.match(view.textContent ?? "", /read me/);
  view.querySelector<HTMLButtonElement>("#guidelines-continue")!.click();
  assert.equal(advanced, true);
});
