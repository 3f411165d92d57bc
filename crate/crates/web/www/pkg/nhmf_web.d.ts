/* tslint:disable */
/* eslint-disable */

export class FiniteNCurves {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    /**
     * Linear entropy of the exact one-particle marginal.
     */
    readonly entropy: Float64Array;
    readonly entropy_limit: Float64Array;
    /**
     * Infidelity of the exact marginal against the Hartree wavefunction.
     */
    readonly infidelity: Float64Array;
    readonly infidelity_limit: Float64Array;
    readonly t: Float64Array;
}

export class RateProfile {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    readonly f: Float64Array;
    readonly x: Float64Array;
    /**
     * Second maximizer in the balanced case above t = ½, otherwise NaN.
     */
    readonly x_mirror: number;
    readonly x_star: number;
}

export class Trajectories {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    readonly hartree_phi0_abs2: Float64Array;
    readonly nu0_abs2: Float64Array;
    readonly t: Float64Array;
    readonly x_star: Float64Array;
}

/**
 * Exact ZZ dynamics at `N` particles next to the `N → ∞` values.
 */
export function finite_n_curves(p0: number, n_particles: number, t_max: number, steps: number): FiniteNCurves;

/**
 * `f_t(x)` on `points` interior grid points plus its global maximizer.
 */
export function rate_profile(p0: number, t: number, points: number): RateProfile;

/**
 * Limit wavefunction against the Hartree solution from the same start.
 */
export function trajectories(p0: number, t_max: number, steps: number): Trajectories;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_finitencurves_free: (a: number, b: number) => void;
    readonly __wbg_rateprofile_free: (a: number, b: number) => void;
    readonly __wbg_trajectories_free: (a: number, b: number) => void;
    readonly finite_n_curves: (a: number, b: number, c: number, d: number) => [number, number, number];
    readonly finitencurves_entropy: (a: number) => [number, number];
    readonly finitencurves_entropy_limit: (a: number) => [number, number];
    readonly finitencurves_infidelity: (a: number) => [number, number];
    readonly finitencurves_infidelity_limit: (a: number) => [number, number];
    readonly finitencurves_t: (a: number) => [number, number];
    readonly rate_profile: (a: number, b: number, c: number) => [number, number, number];
    readonly rateprofile_f: (a: number) => [number, number];
    readonly rateprofile_x: (a: number) => [number, number];
    readonly rateprofile_x_mirror: (a: number) => number;
    readonly rateprofile_x_star: (a: number) => number;
    readonly trajectories: (a: number, b: number, c: number) => [number, number, number];
    readonly trajectories_hartree_phi0_abs2: (a: number) => [number, number];
    readonly trajectories_nu0_abs2: (a: number) => [number, number];
    readonly trajectories_t: (a: number) => [number, number];
    readonly trajectories_x_star: (a: number) => [number, number];
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
