/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const ensemble_curves: (a: number) => [number, number, number, number];
export const ensemble_sample: (a: number, b: number, c: number, d: bigint) => [number, number, number, number];
export const eraser_curve: (a: number, b: number, c: number, d: number) => [number, number, number, number];
export const random_state: (a: number, b: number, c: bigint, d: number) => [number, number, number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_start: () => void;
