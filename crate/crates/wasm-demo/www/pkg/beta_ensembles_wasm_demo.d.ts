/* tslint:disable */
/* eslint-disable */

/**
 * Histogram and KS summary of the centered `U_m` statistic (`mode = 0`),
 * `log L'_m` (`1`) or the quadratic term (`2`).
 */
export function clt_histogram(beta: number, m: number, a1: number, a2: number, mode: number, replicates: number, bins: number, seed: bigint): string;

/**
 * TV and KL estimates along `σ ∈ [σ_min, σ_max]` at fixed `a₁`, `a₂`,
 * with `m = round(σa₂/a₁)`.
 */
export function sigma_scan(beta: number, a1: number, a2: number, sigma_min: number, sigma_max: number, steps: number, n: number, seed: bigint): string;

/**
 * Pooled eigenvalue histograms of `2aλ` (Jacobi) and `μ` (Laguerre) over
 * `draws` independent spectra.
 */
export function spectrum_histograms(beta: number, m: number, a1: number, a2: number, draws: number, bins: number, seed: bigint): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly clt_histogram: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: bigint) => [number, number, number, number];
    readonly sigma_scan: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: bigint) => [number, number, number, number];
    readonly spectrum_histograms: (a: number, b: number, c: number, d: number, e: number, f: number, g: bigint) => [number, number, number, number];
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
