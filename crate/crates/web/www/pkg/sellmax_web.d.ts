/* tslint:disable */
/* eslint-disable */

export class Boundary {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    b: Float64Array;
    h: Float64Array;
    /**
     * Largest solver residual over the nodes.
     */
    max_residual: number;
    t: Float64Array;
    /**
     * Value of the infimum problem at the start.
     */
    v1: number;
}

export class Regimes {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    infimum: string;
    lambda: number;
    supremum: string;
}

export class Values {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    /**
     * `G(0, 0)`: expected ratio when selling at once.
     */
    gain: number;
    v2_immediate: number;
    v2_regime: string;
    v2_terminal: number;
    v2: number;
}

/**
 * Selling boundary `b` and the zero curve `h` on a uniform grid.
 */
export function boundary(mu: number, sigma: number, horizon: number, steps: number): Boundary;

/**
 * Classification of both problems for drift `mu` and volatility `sigma`.
 */
export function regimes(mu: number, sigma: number): Regimes;

/**
 * Expected ratios of the immediate sale and of the supremum problem.
 */
export function values(mu: number, sigma: number, horizon: number): Values;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_boundary_free: (a: number, b: number) => void;
    readonly __wbg_get_boundary_b: (a: number) => [number, number];
    readonly __wbg_get_boundary_h: (a: number) => [number, number];
    readonly __wbg_get_boundary_max_residual: (a: number) => number;
    readonly __wbg_get_boundary_t: (a: number) => [number, number];
    readonly __wbg_get_boundary_v1: (a: number) => number;
    readonly __wbg_get_regimes_infimum: (a: number) => [number, number];
    readonly __wbg_get_regimes_lambda: (a: number) => number;
    readonly __wbg_get_regimes_supremum: (a: number) => [number, number];
    readonly __wbg_get_values_gain: (a: number) => number;
    readonly __wbg_get_values_v2: (a: number) => number;
    readonly __wbg_get_values_v2_immediate: (a: number) => number;
    readonly __wbg_get_values_v2_regime: (a: number) => [number, number];
    readonly __wbg_get_values_v2_terminal: (a: number) => number;
    readonly __wbg_regimes_free: (a: number, b: number) => void;
    readonly __wbg_set_boundary_b: (a: number, b: number, c: number) => void;
    readonly __wbg_set_boundary_h: (a: number, b: number, c: number) => void;
    readonly __wbg_set_boundary_max_residual: (a: number, b: number) => void;
    readonly __wbg_set_boundary_t: (a: number, b: number, c: number) => void;
    readonly __wbg_set_boundary_v1: (a: number, b: number) => void;
    readonly __wbg_set_regimes_infimum: (a: number, b: number, c: number) => void;
    readonly __wbg_set_regimes_lambda: (a: number, b: number) => void;
    readonly __wbg_set_regimes_supremum: (a: number, b: number, c: number) => void;
    readonly __wbg_set_values_gain: (a: number, b: number) => void;
    readonly __wbg_set_values_v2: (a: number, b: number) => void;
    readonly __wbg_set_values_v2_immediate: (a: number, b: number) => void;
    readonly __wbg_set_values_v2_regime: (a: number, b: number, c: number) => void;
    readonly __wbg_set_values_v2_terminal: (a: number, b: number) => void;
    readonly __wbg_values_free: (a: number, b: number) => void;
    readonly boundary: (a: number, b: number, c: number, d: number) => [number, number, number];
    readonly regimes: (a: number, b: number) => [number, number, number];
    readonly values: (a: number, b: number, c: number) => [number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
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
