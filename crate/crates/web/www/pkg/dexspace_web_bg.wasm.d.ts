/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_workspace_free: (a: number, b: number) => void;
export const workspace_new: (a: number, b: number, c: number, d: number, e: bigint, f: number) => [number, number, number];
export const workspace_points: (a: number) => any;
export const workspace_slice_columns: (a: number, b: number, c: number) => any;
export const workspace_slice_count: (a: number, b: number) => number;
export const workspace_slice_curve: (a: number, b: number, c: number) => any;
export const workspace_volumes: (a: number) => any;
export const __wbindgen_externrefs: WebAssembly.Table;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_start: () => void;
