/* tslint:disable */
/* eslint-disable */

export class Workspace {
    free(): void;
    [Symbol.dispose](): void;
    /**
     * Samples and analyzes the design `[a1, a3, a5]` given in mm.
     */
    constructor(a1: number, a3: number, a5: number, samples: number, seed: bigint, m_ref: number);
    /**
     * Flat `[x, y, z, dexterous]` quadruples in meters.
     */
    points(): Float64Array;
    /**
     * Column extrema of one slice as flat `[x, z_max, z_min]` triples.
     */
    slice_columns(dexterous: boolean, index: number): Float64Array;
    /**
     * Slice slab count of the reachable (or dexterous) report.
     */
    slice_count(dexterous: boolean): number;
    /**
     * Envelope of one fitted slice as flat `[x, upper, lower]` triples,
     * followed by the slab's y center as the last value.
     */
    slice_curve(dexterous: boolean, index: number): Float64Array;
    /**
     * `[v_reach, v_dex, r_ed, dexterous fraction]`.
     */
    volumes(): Float64Array;
}

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_workspace_free: (a: number, b: number) => void;
    readonly workspace_new: (a: number, b: number, c: number, d: number, e: bigint, f: number) => [number, number, number];
    readonly workspace_points: (a: number) => any;
    readonly workspace_slice_columns: (a: number, b: number, c: number) => any;
    readonly workspace_slice_count: (a: number, b: number) => number;
    readonly workspace_slice_curve: (a: number, b: number, c: number) => any;
    readonly workspace_volumes: (a: number) => any;
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __externref_table_dealloc: (a: number) => void;
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
