// Pure view -> markup rendering, no DOM access so it runs under tests.
// The browser entry point injects these strings into the page.

import type { HandEntry, MoveBlob, ResponseBlob, SessionView } from "./types.js";

export function describeMove(m: MoveBlob): string {
    return `stack ${m.i}: ${m.a} out, ${m.b} in`;
}

export function describeResponse(r: ResponseBlob): string {
    if (r === "pass") return "pass";
    return `stack ${r.j}: ${r.out} out, ${r.in} in`;
}

export function statusLine(view: SessionView): string {
    switch (view.status) {
        case "awaiting_player":
            return view.human_role === "player"
                ? "Your move."
                : "Machine is moving...";
        case "awaiting_demon":
            return view.human_role === "demon"
                ? "Your response."
                : "Demon is answering...";
        case "won":
            return "Won";
        case "lost":
            return "Lost: move budget exhausted";
    }
}

function handCard(hand: HandEntry[] | null, stack: number, card: number): boolean {
    return hand !== null && hand.some(h => h.stack === stack && h.card === card);
}

// One <li> per stack; winning-hand cards picked out with a class.
export function stacksHtml(view: SessionView): string {
    const items = view.stacks.map((cards, idx) => {
        const stack = idx + 1;
        const spans = cards
            .map(c => {
                const cls = handCard(view.winning_hand, stack, c) ? "card hand" : "card";
                return `<span class="${cls}">${c}</span>`;
            })
            .join(" ");
        return `<li value="${stack}">${spans}</li>`;
    });
    return `<ol class="stacks">${items.join("")}</ol>`;
}

export function reserveHtml(view: SessionView): string {
    const cells = view.reserve
        .map((count, idx) => `<span class="reserve-cell">${idx + 1}&times;${count}</span>`)
        .join(" ");
    return `<div class="reserve">${cells}</div>`;
}

export function pendingHtml(view: SessionView): string {
    if (view.pending_move === null) return "";
    return `<p class="pending">Machine played ${describeMove(view.pending_move)}</p>`;
}

export function transcriptHtml(view: SessionView): string {
    const rows = view.transcript.rounds
        .map(
            (r, idx) =>
                `<li value="${idx + 1}">${describeMove(r.player)} / demon: ${describeResponse(r.demon)}</li>`,
        )
        .join("");
    return `<ol class="transcript">${rows}</ol>`;
}

export function screenText(view: SessionView): string {
    const lines = [
        `session ${view.id} (${view.human_role} vs ${view.demon} demon)`,
        `status: ${statusLine(view)}`,
        ...view.stacks.map((cards, idx) => `stack ${idx + 1}: ${cards.join(" ")}`),
        `reserve: ${view.reserve.map((n, i) => `${i + 1}x${n}`).join(" ")}`,
    ];
    if (view.winning_hand !== null) {
        const hand = view.winning_hand.map(h => `${h.card} from stack ${h.stack}`).join(", ");
        lines.push(`winning hand: ${hand}`);
    }
    return lines.join("\n");
}
