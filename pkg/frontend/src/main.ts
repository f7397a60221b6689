// Browser wiring: builds the page from the latest server view and repaints
// after every action. Action buttons are generated from the server's legal
// lists and nothing else, so an ineligible action has no button to click.

import { ApiClient, ServiceError } from "./api.js";
import { SessionFlow } from "./flow.js";
import {
    describeMove,
    describeResponse,
    pendingHtml,
    reserveHtml,
    stacksHtml,
    statusLine,
    transcriptHtml,
} from "./render.js";
import type { SessionView } from "./types.js";

const params = new URLSearchParams(window.location.search);
const api = new ApiClient(params.get("api") ?? "");
const flow = new SessionFlow(api);

const el = (id: string): HTMLElement => {
    const node = document.getElementById(id);
    if (!node) throw new Error(`missing #${id}`);
    return node;
};

function showError(message: string): void {
    el("error").textContent = message;
}

async function act(run: () => Promise<unknown>): Promise<void> {
    showError("");
    try {
        await run();
    } catch (exc) {
        if (exc instanceof ServiceError) showError(`${exc.code}: ${exc.message}`);
        else showError(String(exc));
    }
    if (flow.started) paint(flow.view);
}

function actionButtons(view: SessionView): HTMLElement {
    const box = document.createElement("div");
    box.className = "actions";
    for (const mv of view.legal_moves) {
        const btn = document.createElement("button");
        btn.textContent = describeMove(mv);
        btn.onclick = () => act(() => flow.submitMove(mv));
        box.appendChild(btn);
    }
    for (const resp of view.legal_responses) {
        const btn = document.createElement("button");
        btn.textContent = describeResponse(resp);
        btn.onclick = () => act(() => flow.submitResponse(resp));
        box.appendChild(btn);
    }
    return box;
}

function paint(view: SessionView): void {
    el("status").textContent = statusLine(view);
    el("status").className = view.status;
    el("board").innerHTML = stacksHtml(view) + reserveHtml(view) + pendingHtml(view);
    el("transcript").innerHTML = transcriptHtml(view);
    const actions = el("actions");
    actions.innerHTML = "";
    actions.appendChild(actionButtons(view));
    (el("hint-btn") as HTMLButtonElement).disabled =
        view.human_role !== "player" || view.status !== "awaiting_player";
}

el("new-game").onclick = () =>
    act(async () => {
        const role = (el("role") as HTMLSelectElement).value as "player" | "demon" | "observer";
        const demon = (el("demon") as HTMLSelectElement).value;
        const seed = Number((el("seed") as HTMLInputElement).value) || 0;
        await flow.create({ demon, human_role: role, seed });
    });

el("hint-btn").onclick = () =>
    act(async () => {
        const hint = await flow.hint();
        el("hint-out").textContent = hint.already_winning
            ? "position is already winning"
            : hint.move
              ? `try ${describeMove(hint.move)}`
              : "";
    });

el("refresh").onclick = () => act(() => flow.refresh());
