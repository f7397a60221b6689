// Wire types mirroring the session service JSON. The server is the only
// authority on rules; these exist for display and for choosing among the
// actions the server itself listed.

export interface MoveBlob {
    i: number;  // stack index, 1-based
    a: number;  // card swapped out
    b: number;  // card swapped in
}

export interface SwapBlob {
    j: number;
    out: number;
    in: number;
}

export type ResponseBlob = "pass" | SwapBlob;

export interface HandEntry {
    stack: number;
    card: number;
}

export interface TranscriptRound {
    player: MoveBlob;
    demon: ResponseBlob;
}

export interface TranscriptView {
    config: { k: number; m: number };
    initial_stacks: number[][];
    rounds: TranscriptRound[];
    outcome: "won" | "budget_exhausted" | null;
}

export type SessionStatus = "awaiting_player" | "awaiting_demon" | "won" | "lost";

export interface SessionView {
    id: string;
    status: SessionStatus;
    config: { k: number; m: number };
    stacks: number[][];
    reserve: number[];
    human_role: "player" | "demon" | "observer";
    demon: string;
    strategy: string;
    moves_played: number;
    budget: number;
    pending_move: MoveBlob | null;
    legal_moves: MoveBlob[];
    legal_responses: ResponseBlob[];
    winning_hand: HandEntry[] | null;
    transcript: TranscriptView;
}

export interface HintView {
    already_winning: boolean;
    move: MoveBlob | null;
}

export interface CreateRequest {
    demon?: string;
    human_role?: "player" | "demon" | "observer";
    strategy?: "auto" | "konig" | "vizing";
    seed?: number;
    k?: number;
    m?: number;
    stacks?: number[][];
    budget?: number;
}

export function sameMove(x: MoveBlob, y: MoveBlob): boolean {
    return x.i === y.i && x.a === y.a && x.b === y.b;
}

export function sameResponse(x: ResponseBlob, y: ResponseBlob): boolean {
    if (x === "pass" || y === "pass") return x === y;
    return x.j === y.j && x.out === y.out && x.in === y.in;
}
