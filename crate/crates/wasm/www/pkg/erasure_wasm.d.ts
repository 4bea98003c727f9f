/* tslint:disable */
/* eslint-disable */

export function ensemble_curves(max_k: number): Float64Array;

export function ensemble_sample(a: number, k: number, samples: number, seed: bigint): Float64Array;

export function eraser_curve(points: number, phi: number, env_overlap: number, marker_in_env: boolean): Float64Array;

export function random_state(alice: number, env: number, seed: bigint, budget: number): Float64Array;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly ensemble_curves: (a: number) => [number, number, number, number];
    readonly ensemble_sample: (a: number, b: number, c: number, d: bigint) => [number, number, number, number];
    readonly eraser_curve: (a: number, b: number, c: number, d: number) => [number, number, number, number];
    readonly random_state: (a: number, b: number, c: bigint, d: number) => [number, number, number, number];
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
