// Thin HTTP client for the session service. All methods resolve to the
// server's JSON or reject with a ServiceError carrying the server's own
// {code, message} body, which the UI shows verbatim.

import type { CreateRequest, HintView, MoveBlob, ResponseBlob, SessionView } from "./types.js";

export class ServiceError extends Error {
    constructor(
        public readonly status: number,
        public readonly code: string,
        message: string,
    ) {
        super(message);
        this.name = "ServiceError";
    }
}

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
    constructor(
        private readonly base: string = "",
        private readonly fetchImpl: FetchLike = (url, init) => fetch(url, init),
    ) {}

    private async request<T>(path: string, init?: RequestInit): Promise<T> {
        const resp = await this.fetchImpl(this.base + path, init);
        const text = await resp.text();
        let body: unknown = null;
        try {
            body = text ? JSON.parse(text) : null;
        } catch {
            body = null;
        }
        if (!resp.ok) {
            const err = (body ?? {}) as { code?: string; message?: string };
            throw new ServiceError(
                resp.status,
                err.code ?? `http_${resp.status}`,
                err.message ?? text ?? `request failed with ${resp.status}`,
            );
        }
        return body as T;
    }

    private post<T>(path: string, payload: unknown): Promise<T> {
        return this.request<T>(path, {
            method: "POST",
            headers: { "content-type": "application/json" },
            body: JSON.stringify(payload),
        });
    }

    health(): Promise<{ status: string }> {
        return this.request("/healthz");
    }

    createSession(req: CreateRequest): Promise<SessionView> {
        return this.post("/sessions", req);
    }

    getState(id: string): Promise<SessionView> {
        return this.request(`/sessions/${id}`);
    }

    postMove(id: string, move: MoveBlob): Promise<SessionView> {
        return this.post(`/sessions/${id}/move`, move);
    }

    postResponse(id: string, response: ResponseBlob): Promise<SessionView> {
        return this.post(`/sessions/${id}/response`, response);
    }

    getHint(id: string): Promise<HintView> {
        return this.request(`/sessions/${id}/hint`);
    }
}
