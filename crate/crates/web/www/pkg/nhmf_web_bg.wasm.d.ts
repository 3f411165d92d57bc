/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_finitencurves_free: (a: number, b: number) => void;
export const __wbg_rateprofile_free: (a: number, b: number) => void;
export const __wbg_trajectories_free: (a: number, b: number) => void;
export const finite_n_curves: (a: number, b: number, c: number, d: number) => [number, number, number];
export const finitencurves_entropy: (a: number) => [number, number];
export const finitencurves_entropy_limit: (a: number) => [number, number];
export const finitencurves_infidelity: (a: number) => [number, number];
export const finitencurves_infidelity_limit: (a: number) => [number, number];
export const finitencurves_t: (a: number) => [number, number];
export const rate_profile: (a: number, b: number, c: number) => [number, number, number];
export const rateprofile_f: (a: number) => [number, number];
export const rateprofile_x: (a: number) => [number, number];
export const rateprofile_x_mirror: (a: number) => number;
export const rateprofile_x_star: (a: number) => number;
export const trajectories: (a: number, b: number, c: number) => [number, number, number];
export const trajectories_hartree_phi0_abs2: (a: number) => [number, number];
export const trajectories_nu0_abs2: (a: number) => [number, number];
export const trajectories_t: (a: number) => [number, number];
export const trajectories_x_star: (a: number) => [number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_start: () => void;
