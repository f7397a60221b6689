// Session flow: a stateless-by-design wrapper that keeps only the latest
// server view and refuses to submit anything the server did not list as
// legal. Every mutation returns the fresh view, and refresh() re-reads the
// whole board, so a reloaded page loses nothing.

import { ApiClient } from "./api.js";
import {
    sameMove,
    sameResponse,
    type CreateRequest,
    type HintView,
    type MoveBlob,
    type ResponseBlob,
    type SessionView,
} from "./types.js";

export class IllegalClick extends Error {}

export interface SubmittedAction {
    kind: "move" | "response";
    action: MoveBlob | ResponseBlob;
    listed: boolean;
}

export class SessionFlow {
    private current: SessionView | null = null;
    readonly submitted: SubmittedAction[] = [];

    constructor(private readonly api: ApiClient) {}

    get started(): boolean {
        return this.current !== null;
    }

    get view(): SessionView {
        if (this.current === null) throw new Error("no session yet");
        return this.current;
    }

    get finished(): boolean {
        return this.view.status === "won" || this.view.status === "lost";
    }

    async create(req: CreateRequest): Promise<SessionView> {
        this.current = await this.api.createSession(req);
        return this.current;
    }

    async refresh(): Promise<SessionView> {
        this.current = await this.api.getState(this.view.id);
        return this.current;
    }

    async hint(): Promise<HintView> {
        return this.api.getHint(this.view.id);
    }

    // The one invariant of the client: actions not on the server's legal
    // list never leave the browser.
    async submitMove(move: MoveBlob): Promise<SessionView> {
        const listed = this.view.legal_moves.some(m => sameMove(m, move));
        this.submitted.push({ kind: "move", action: move, listed });
        if (!listed) {
            throw new IllegalClick(
                `move ${move.i}:${move.a}->${move.b} is not in the server's legal list`,
            );
        }
        this.current = await this.api.postMove(this.view.id, move);
        return this.current;
    }

    async submitResponse(response: ResponseBlob): Promise<SessionView> {
        const listed = this.view.legal_responses.some(r => sameResponse(r, response));
        this.submitted.push({ kind: "response", action: response, listed });
        if (!listed) {
            throw new IllegalClick("that response is not in the server's legal list");
        }
        this.current = await this.api.postResponse(this.view.id, response);
        return this.current;
    }

    everySubmissionWasListed(): boolean {
        return this.submitted.every(s => s.listed);
    }
}
