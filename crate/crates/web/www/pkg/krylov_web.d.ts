/* tslint:disable */
/* eslint-disable */

/**
 * Two equal-length columns plus a one-line summary.
 */
export class Series {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    readonly summary: string;
    readonly x: Float64Array;
    readonly y: Float64Array;
}

export function alphaCurve(coupling: number, points: number): Series;

export function krylovComplexity(spin: number, coupling: number, t_max: number, points: number): Series;

export function lanczosCoefficients(spin: number, coupling: number, max_n: number): Series;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_series_free: (a: number, b: number) => void;
    readonly alphaCurve: (a: number, b: number) => [number, number, number];
    readonly krylovComplexity: (a: number, b: number, c: number, d: number) => [number, number, number];
    readonly lanczosCoefficients: (a: number, b: number, c: number) => [number, number, number];
    readonly series_summary: (a: number) => [number, number];
    readonly series_x: (a: number) => [number, number];
    readonly series_y: (a: number) => [number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_start: () => void;
}

export type SyncInitInput = BufferSource | WebAssembly.Module;

/**
 * Instantiates the given `module`, which can either be bytes or
 * a precompiled `WebAssembly.Module`.
 *
 * @param {{ module: SyncInitInput }} module - Passing `SyncInitInput` directly is deprecated.
 *
 * @returns {InitOutput}
 */
export function initSync(module: { module: SyncInitInput } | SyncInitInput): InitOutput;

/**
 * If `module_or_path` is {RequestInfo} or {URL}, makes a request and
 * for everything else, calls `WebAssembly.instantiate` directly.
 *
 * @param {{ module_or_path: InitInput | Promise<InitInput> }} module_or_path - Passing `InitInput` directly is deprecated.
 *
 * @returns {Promise<InitOutput>}
 */
export default function __wbg_init (module_or_path?: { module_or_path: InitInput | Promise<InitInput> } | InitInput | Promise<InitInput>): Promise<InitOutput>;
