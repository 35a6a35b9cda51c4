/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_series_free: (a: number, b: number) => void;
export const alphaCurve: (a: number, b: number) => [number, number, number];
export const krylovComplexity: (a: number, b: number, c: number, d: number) => [number, number, number];
export const lanczosCoefficients: (a: number, b: number, c: number) => [number, number, number];
export const series_summary: (a: number) => [number, number];
export const series_x: (a: number) => [number, number];
export const series_y: (a: number) => [number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_start: () => void;
