/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_boundary_free: (a: number, b: number) => void;
export const __wbg_get_boundary_b: (a: number) => [number, number];
export const __wbg_get_boundary_h: (a: number) => [number, number];
export const __wbg_get_boundary_max_residual: (a: number) => number;
export const __wbg_get_boundary_t: (a: number) => [number, number];
export const __wbg_get_boundary_v1: (a: number) => number;
export const __wbg_get_regimes_infimum: (a: number) => [number, number];
export const __wbg_get_regimes_lambda: (a: number) => number;
export const __wbg_get_regimes_supremum: (a: number) => [number, number];
export const __wbg_get_values_gain: (a: number) => number;
export const __wbg_get_values_v2: (a: number) => number;
export const __wbg_get_values_v2_immediate: (a: number) => number;
export const __wbg_get_values_v2_regime: (a: number) => [number, number];
export const __wbg_get_values_v2_terminal: (a: number) => number;
export const __wbg_regimes_free: (a: number, b: number) => void;
export const __wbg_set_boundary_b: (a: number, b: number, c: number) => void;
export const __wbg_set_boundary_h: (a: number, b: number, c: number) => void;
export const __wbg_set_boundary_max_residual: (a: number, b: number) => void;
export const __wbg_set_boundary_t: (a: number, b: number, c: number) => void;
export const __wbg_set_boundary_v1: (a: number, b: number) => void;
export const __wbg_set_regimes_infimum: (a: number, b: number, c: number) => void;
export const __wbg_set_regimes_lambda: (a: number, b: number) => void;
export const __wbg_set_regimes_supremum: (a: number, b: number, c: number) => void;
export const __wbg_set_values_gain: (a: number, b: number) => void;
export const __wbg_set_values_v2: (a: number, b: number) => void;
export const __wbg_set_values_v2_immediate: (a: number, b: number) => void;
export const __wbg_set_values_v2_regime: (a: number, b: number, c: number) => void;
export const __wbg_set_values_v2_terminal: (a: number, b: number) => void;
export const __wbg_values_free: (a: number, b: number) => void;
export const boundary: (a: number, b: number, c: number, d: number) => [number, number, number];
export const regimes: (a: number, b: number) => [number, number, number];
export const values: (a: number, b: number, c: number) => [number, number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
export const __wbindgen_start: () => void;
