// Pure rendering: view-model in, HTML string out. Keeping this free of DOM
// APIs lets the tests assert on rendered output without a browser.

import { UiSessionView } from "./state";

function esc(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

function banner(view: UiSessionView): string {
  if (!view.banner) {
    return "";
  }
  return (
    `<div class="banner" role="alert">${esc(view.banner)}` +
    `<button data-action="dismiss">dismiss</button></div>`
  );
}

function answeredList(view: UiSessionView): string {
  if (view.answered.length === 0) {
    return "";
  }
  const items = view.answered.map((fact) => `<li>${esc(fact)}</li>`).join("");
  return `<section class="answered"><h3>Answers so far</h3><ul>${items}</ul></section>`;
}

function whyPanel(view: UiSessionView): string {
  if (view.why === null) {
    return "";
  }
  const items = view.why.map((fact) => `<li>${esc(fact)}</li>`).join("");
  return `<aside class="why-panel"><h3>Why</h3><ol>${items}</ol></aside>`;
}

export function render(view: UiSessionView): string {
  const parts: string[] = [banner(view)];
  switch (view.phase) {
    case "select":
      parts.push(
        `<section class="kb-select">`,
        `<h2>Choose a knowledge base</h2>`,
        `<textarea data-field="knb" placeholder="paste .knb text"></textarea>`,
        `<button data-action="upload"${view.busy ? " disabled" : ""}>Upload</button>`,
        `<input data-field="kb-id" placeholder="or enter an existing kb id" />`,
        `<button data-action="use-id">Use id</button>`,
        view.kbLoaded
          ? `<p class="kb-ready">Knowledge base loaded.</p>` +
            `<button data-action="start"${view.busy ? " disabled" : ""}>Start consultation</button>`
          : "",
        `</section>`,
      );
      break;
    case "question": {
      const question = view.question!;
      const buttons = question.menu
        .map(
          (value) =>
            `<button data-action="answer" data-value="${esc(value)}"` +
            `${view.busy ? " disabled" : ""}>${esc(value)}</button>`,
        )
        .join("");
      parts.push(
        `<section class="question-card">`,
        `<h2>What is the value for ${esc(question.attribute)}?</h2>`,
        `<div class="menu">${buttons}</div>`,
        `<button data-action="exit"${view.busy ? " disabled" : ""}>Exit</button>`,
        `</section>`,
        answeredList(view),
      );
      break;
    }
    case "concluded": {
      const conclusion = view.conclusion!;
      parts.push(
        `<section class="conclusion-card">`,
        `<h2>${esc(conclusion.class)} &mdash; probability ${conclusion.probability}</h2>`,
        `<button data-action="restart">New consultation</button>`,
        `</section>`,
        whyPanel(view),
      );
      break;
    }
    case "failed":
      parts.push(
        `<section class="failed-card"><h2>No conclusion could be reached.</h2>`,
        `<button data-action="restart">Try again</button></section>`,
        whyPanel(view),
      );
      break;
    case "aborted":
      parts.push(
        `<section class="aborted-card"><h2>Consultation aborted.</h2>`,
        `<button data-action="restart">Restart</button></section>`,
      );
      break;
  }
  return parts.filter(Boolean).join("\n");
}
