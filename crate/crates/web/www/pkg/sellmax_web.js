/* @ts-self-types="./sellmax_web.d.ts" */

export class Boundary {
    static __wrap(ptr) {
        const obj = Object.create(Boundary.prototype);
        obj.__wbg_ptr = ptr;
        BoundaryFinalization.register(obj, obj.__wbg_ptr, obj);
        return obj;
    }
    __destroy_into_raw() {
        const ptr = this.__wbg_ptr;
        this.__wbg_ptr = 0;
        BoundaryFinalization.unregister(this);
        return ptr;
    }
    free() {
        const ptr = this.__destroy_into_raw();
        wasm.__wbg_boundary_free(ptr, 0);
    }
    /**
     * @returns {Float64Array}
     */
    get b() {
        const ret = wasm.__wbg_get_boundary_b(this.__wbg_ptr);
        var v1 = getArrayF64FromWasm0(ret[0], ret[1]).slice();
        wasm.__wbindgen_free(ret[0], ret[1] * 8, 8);
        return v1;
    }
    /**
     * @returns {Float64Array}
     */
    get h() {
        const ret = wasm.__wbg_get_boundary_h(this.__wbg_ptr);
        var v1 = getArrayF64FromWasm0(ret[0], ret[1]).slice();
        wasm.__wbindgen_free(ret[0], ret[1] * 8, 8);
        return v1;
    }
    /**
     * Largest solver residual over the nodes.
     * @returns {number}
     */
    get max_residual() {
        const ret = wasm.__wbg_get_boundary_max_residual(this.__wbg_ptr);
        return ret;
    }
    /**
     * @returns {Float64Array}
     */
    get t() {
        const ret = wasm.__wbg_get_boundary_t(this.__wbg_ptr);
        var v1 = getArrayF64FromWasm0(ret[0], ret[1]).slice();
        wasm.__wbindgen_free(ret[0], ret[1] * 8, 8);
        return v1;
    }
    /**
     * Value of the infimum problem at the start.
     * @returns {number}
     */
    get v1() {
        const ret = wasm.__wbg_get_boundary_v1(this.__wbg_ptr);
        return ret;
    }
    /**
     * @param {Float64Array} arg0
     */
    set b(arg0) {
        const ptr0 = passArrayF64ToWasm0(arg0, wasm.__wbindgen_malloc);
        const len0 = WASM_VECTOR_LEN;
        wasm.__wbg_set_boundary_b(this.__wbg_ptr, ptr0, len0);
    }
    /**
     * @param {Float64Array} arg0
     */
    set h(arg0) {
        const ptr0 = passArrayF64ToWasm0(arg0, wasm.__wbindgen_malloc);
        const len0 = WASM_VECTOR_LEN;
        wasm.__wbg_set_boundary_h(this.__wbg_ptr, ptr0, len0);
    }
    /**
     * Largest solver residual over the nodes.
     * @param {number} arg0
     */
    set max_residual(arg0) {
        wasm.__wbg_set_boundary_max_residual(this.__wbg_ptr, arg0);
    }
    /**
     * @param {Float64Array} arg0
     */
    set t(arg0) {
        const ptr0 = passArrayF64ToWasm0(arg0, wasm.__wbindgen_malloc);
        const len0 = WASM_VECTOR_LEN;
        wasm.__wbg_set_boundary_t(this.__wbg_ptr, ptr0, len0);
    }
    /**
     * Value of the infimum problem at the start.
     * @param {number} arg0
     */
    set v1(arg0) {
        wasm.__wbg_set_boundary_v1(this.__wbg_ptr, arg0);
    }
}
if (Symbol.dispose) Boundary.prototype[Symbol.dispose] = Boundary.prototype.free;

export class Regimes {
    static __wrap(ptr) {
        const obj = Object.create(Regimes.prototype);
        obj.__wbg_ptr = ptr;
        RegimesFinalization.register(obj, obj.__wbg_ptr, obj);
        return obj;
    }
    __destroy_into_raw() {
        const ptr = this.__wbg_ptr;
        this.__wbg_ptr = 0;
        RegimesFinalization.unregister(this);
        return ptr;
    }
    free() {
        const ptr = this.__destroy_into_raw();
        wasm.__wbg_regimes_free(ptr, 0);
    }
    /**
     * @returns {string}
     */
    get infimum() {
        let deferred1_0;
        let deferred1_1;
        try {
            const ret = wasm.__wbg_get_regimes_infimum(this.__wbg_ptr);
            deferred1_0 = ret[0];
            deferred1_1 = ret[1];
            return getStringFromWasm0(ret[0], ret[1]);
        } finally {
            wasm.__wbindgen_free(deferred1_0, deferred1_1, 1);
        }
    }
    /**
     * @returns {number}
     */
    get lambda() {
        const ret = wasm.__wbg_get_regimes_lambda(this.__wbg_ptr);
        return ret;
    }
    /**
     * @returns {string}
     */
    get supremum() {
        let deferred1_0;
        let deferred1_1;
        try {
            const ret = wasm.__wbg_get_regimes_supremum(this.__wbg_ptr);
            deferred1_0 = ret[0];
            deferred1_1 = ret[1];
            return getStringFromWasm0(ret[0], ret[1]);
        } finally {
            wasm.__wbindgen_free(deferred1_0, deferred1_1, 1);
        }
    }
    /**
     * @param {string} arg0
     */
    set infimum(arg0) {
        const ptr0 = passStringToWasm0(arg0, wasm.__wbindgen_malloc, wasm.__wbindgen_realloc);
        const len0 = WASM_VECTOR_LEN;
        wasm.__wbg_set_regimes_infimum(this.__wbg_ptr, ptr0, len0);
    }
    /**
     * @param {number} arg0
     */
    set lambda(arg0) {
        wasm.__wbg_set_regimes_lambda(this.__wbg_ptr, arg0);
    }
    /**
     * @param {string} arg0
     */
    set supremum(arg0) {
        const ptr0 = passStringToWasm0(arg0, wasm.__wbindgen_malloc, wasm.__wbindgen_realloc);
        const len0 = WASM_VECTOR_LEN;
        wasm.__wbg_set_regimes_supremum(this.__wbg_ptr, ptr0, len0);
    }
}
if (Symbol.dispose) Regimes.prototype[Symbol.dispose] = Regimes.prototype.free;

export class Values {
    static __wrap(ptr) {
        const obj = Object.create(Values.prototype);
        obj.__wbg_ptr = ptr;
        ValuesFinalization.register(obj, obj.__wbg_ptr, obj);
        return obj;
    }
    __destroy_into_raw() {
        const ptr = this.__wbg_ptr;
        this.__wbg_ptr = 0;
        ValuesFinalization.unregister(this);
        return ptr;
    }
    free() {
        const ptr = this.__destroy_into_raw();
        wasm.__wbg_values_free(ptr, 0);
    }
    /**
     * `G(0, 0)`: expected ratio when selling at once.
     * @returns {number}
     */
    get gain() {
        const ret = wasm.__wbg_get_values_gain(this.__wbg_ptr);
        return ret;
    }
    /**
     * @returns {number}
     */
    get v2_immediate() {
        const ret = wasm.__wbg_get_values_v2_immediate(this.__wbg_ptr);
        return ret;
    }
    /**
     * @returns {string}
     */
    get v2_regime() {
        let deferred1_0;
        let deferred1_1;
        try {
            const ret = wasm.__wbg_get_values_v2_regime(this.__wbg_ptr);
            deferred1_0 = ret[0];
            deferred1_1 = ret[1];
            return getStringFromWasm0(ret[0], ret[1]);
        } finally {
            wasm.__wbindgen_free(deferred1_0, deferred1_1, 1);
        }
    }
    /**
     * @returns {number}
     */
    get v2_terminal() {
        const ret = wasm.__wbg_get_values_v2_terminal(this.__wbg_ptr);
        return ret;
    }
    /**
     * @returns {number}
     */
    get v2() {
        const ret = wasm.__wbg_get_values_v2(this.__wbg_ptr);
        return ret;
    }
    /**
     * `G(0, 0)`: expected ratio when selling at once.
     * @param {number} arg0
     */
    set gain(arg0) {
        wasm.__wbg_set_values_gain(this.__wbg_ptr, arg0);
    }
    /**
     * @param {number} arg0
     */
    set v2_immediate(arg0) {
        wasm.__wbg_set_values_v2_immediate(this.__wbg_ptr, arg0);
    }
    /**
     * @param {string} arg0
     */
    set v2_regime(arg0) {
        const ptr0 = passStringToWasm0(arg0, wasm.__wbindgen_malloc, wasm.__wbindgen_realloc);
        const len0 = WASM_VECTOR_LEN;
        wasm.__wbg_set_values_v2_regime(this.__wbg_ptr, ptr0, len0);
    }
    /**
     * @param {number} arg0
     */
    set v2_terminal(arg0) {
        wasm.__wbg_set_values_v2_terminal(this.__wbg_ptr, arg0);
    }
    /**
     * @param {number} arg0
     */
    set v2(arg0) {
        wasm.__wbg_set_values_v2(this.__wbg_ptr, arg0);
    }
}
if (Symbol.dispose) Values.prototype[Symbol.dispose] = Values.prototype.free;

/**
 * Selling boundary `b` and the zero curve `h` on a uniform grid.
 * @param {number} mu
 * @param {number} sigma
 * @param {number} horizon
 * @param {number} steps
 * @returns {Boundary}
 */
export function boundary(mu, sigma, horizon, steps) {
    const ret = wasm.boundary(mu, sigma, horizon, steps);
    if (ret[2]) {
        throw takeFromExternrefTable0(ret[1]);
    }
    return Boundary.__wrap(ret[0]);
}

/**
 * Classification of both problems for drift `mu` and volatility `sigma`.
 * @param {number} mu
 * @param {number} sigma
 * @returns {Regimes}
 */
export function regimes(mu, sigma) {
    const ret = wasm.regimes(mu, sigma);
    if (ret[2]) {
        throw takeFromExternrefTable0(ret[1]);
    }
    return Regimes.__wrap(ret[0]);
}

/**
 * Expected ratios of the immediate sale and of the supremum problem.
 * @param {number} mu
 * @param {number} sigma
 * @param {number} horizon
 * @returns {Values}
 */
export function values(mu, sigma, horizon) {
    const ret = wasm.values(mu, sigma, horizon);
    if (ret[2]) {
        throw takeFromExternrefTable0(ret[1]);
    }
    return Values.__wrap(ret[0]);
}
function __wbg_get_imports() {
    const import0 = {
        __proto__: null,
        __wbg_Error_30c8987f7c2ed4e2: function(arg0, arg1) {
            const ret = Error(getStringFromWasm0(arg0, arg1));
            return ret;
        },
        __wbg___wbindgen_throw_41e9ee4f547fc59a: function(arg0, arg1) {
            throw new Error(getStringFromWasm0(arg0, arg1));
        },
        __wbindgen_init_externref_table: function() {
            const table = wasm.__wbindgen_externrefs;
            const offset = table.grow(4);
            table.set(0, undefined);
            table.set(offset + 0, undefined);
            table.set(offset + 1, null);
            table.set(offset + 2, true);
            table.set(offset + 3, false);
        },
    };
    return {
        __proto__: null,
        "./sellmax_web_bg.js": import0,
    };
}

const BoundaryFinalization = (typeof FinalizationRegistry === 'undefined')
    ? { register: () => {}, unregister: () => {} }
    : new FinalizationRegistry(ptr => wasm.__wbg_boundary_free(ptr, 1));
const RegimesFinalization = (typeof FinalizationRegistry === 'undefined')
    ? { register: () => {}, unregister: () => {} }
    : new FinalizationRegistry(ptr => wasm.__wbg_regimes_free(ptr, 1));
const ValuesFinalization = (typeof FinalizationRegistry === 'undefined')
    ? { register: () => {}, unregister: () => {} }
    : new FinalizationRegistry(ptr => wasm.__wbg_values_free(ptr, 1));

function getArrayF64FromWasm0(ptr, len) {
    ptr = ptr >>> 0;
    return getFloat64ArrayMemory0().subarray(ptr / 8, ptr / 8 + len);
}

let cachedFloat64ArrayMemory0 = null;
function getFloat64ArrayMemory0() {
    if (cachedFloat64ArrayMemory0 === null || cachedFloat64ArrayMemory0.byteLength === 0) {
        cachedFloat64ArrayMemory0 = new Float64Array(wasm.memory.buffer);
    }
    return cachedFloat64ArrayMemory0;
}

function getStringFromWasm0(ptr, len) {
    return decodeText(ptr >>> 0, len);
}

let cachedUint8ArrayMemory0 = null;
function getUint8ArrayMemory0() {
    if (cachedUint8ArrayMemory0 === null || cachedUint8ArrayMemory0.byteLength === 0) {
        cachedUint8ArrayMemory0 = new Uint8Array(wasm.memory.buffer);
    }
    return cachedUint8ArrayMemory0;
}

function passArrayF64ToWasm0(arg, malloc) {
    const ptr = malloc(arg.length * 8, 8) >>> 0;
    getFloat64ArrayMemory0().set(arg, ptr / 8);
    WASM_VECTOR_LEN = arg.length;
    return ptr;
}

function passStringToWasm0(arg, malloc, realloc) {
    if (realloc === undefined) {
        const buf = cachedTextEncoder.encode(arg);
        const ptr = malloc(buf.length, 1) >>> 0;
        getUint8ArrayMemory0().subarray(ptr, ptr + buf.length).set(buf);
        WASM_VECTOR_LEN = buf.length;
        return ptr;
    }

    let len = arg.length;
    let ptr = malloc(len, 1) >>> 0;

    const mem = getUint8ArrayMemory0();

    let offset = 0;

    for (; offset < len; offset++) {
        const code = arg.charCodeAt(offset);
        if (code > 0x7F) break;
        mem[ptr + offset] = code;
    }
    if (offset !== len) {
        if (offset !== 0) {
            arg = arg.slice(offset);
        }
        ptr = realloc(ptr, len, len = offset + arg.length * 3, 1) >>> 0;
        const view = getUint8ArrayMemory0().subarray(ptr + offset, ptr + len);
        const ret = cachedTextEncoder.encodeInto(arg, view);

        offset += ret.written;
        ptr = realloc(ptr, len, offset, 1) >>> 0;
    }

    WASM_VECTOR_LEN = offset;
    return ptr;
}

function takeFromExternrefTable0(idx) {
    const value = wasm.__wbindgen_externrefs.get(idx);
    wasm.__externref_table_dealloc(idx);
    return value;
}

let cachedTextDecoder = new TextDecoder('utf-8', { ignoreBOM: true, fatal: true });
cachedTextDecoder.decode();
const MAX_SAFARI_DECODE_BYTES = 2146435072;
let numBytesDecoded = 0;
function decodeText(ptr, len) {
    numBytesDecoded += len;
    if (numBytesDecoded >= MAX_SAFARI_DECODE_BYTES) {
        cachedTextDecoder = new TextDecoder('utf-8', { ignoreBOM: true, fatal: true });
        cachedTextDecoder.decode();
        numBytesDecoded = len;
    }
    return cachedTextDecoder.decode(getUint8ArrayMemory0().subarray(ptr, ptr + len));
}

const cachedTextEncoder = new TextEncoder();

if (!('encodeInto' in cachedTextEncoder)) {
    cachedTextEncoder.encodeInto = function (arg, view) {
        const buf = cachedTextEncoder.encode(arg);
        view.set(buf);
        return {
            read: arg.length,
            written: buf.length
        };
    };
}

let WASM_VECTOR_LEN = 0;

let wasmModule, wasmInstance, wasm;
function __wbg_finalize_init(instance, module) {
    wasmInstance = instance;
    wasm = instance.exports;
    wasmModule = module;
    cachedFloat64ArrayMemory0 = null;
    cachedUint8ArrayMemory0 = null;
    wasm.__wbindgen_start();
    return wasm;
}

async function __wbg_load(module, imports) {
    if (typeof Response === 'function' && module instanceof Response) {
        if (!module.ok) {
            throw new Error(`failed to fetch Wasm: ${module.status} ${module.statusText} fetching '${module.url}'`);
        }

        if (typeof WebAssembly.instantiateStreaming === 'function') {
            try {
                return await WebAssembly.instantiateStreaming(module, imports);
            } catch (e) {
                const validResponse = expectedResponseType(module.type);

                if (validResponse && module.headers.get('Content-Type') !== 'application/wasm') {
                    console.warn("`WebAssembly.instantiateStreaming` failed because your server does not serve Wasm with `application/wasm` MIME type. Falling back to `WebAssembly.instantiate` which is slower. Original error:\n", e);

                } else { throw e; }
            }
        }

        const bytes = await module.arrayBuffer();
        return await WebAssembly.instantiate(bytes, imports);
    } else {
        const instance = await WebAssembly.instantiate(module, imports);

        if (instance instanceof WebAssembly.Instance) {
            return { instance, module };
        } else {
            return instance;
        }
    }

    function expectedResponseType(type) {
        switch (type) {
            case 'basic': case 'cors': case 'default': return true;
        }
        return false;
    }
}

function initSync(module) {
    if (wasm !== undefined) return wasm;


    if (module !== undefined) {
        if (Object.getPrototypeOf(module) === Object.prototype) {
            ({module} = module)
        } else {
            console.warn('using deprecated parameters for `initSync()`; pass a single object instead')
        }
    }

    const imports = __wbg_get_imports();
    if (!(module instanceof WebAssembly.Module)) {
        module = new WebAssembly.Module(module);
    }
    const instance = new WebAssembly.Instance(module, imports);
    return __wbg_finalize_init(instance, module);
}

async function __wbg_init(module_or_path) {
    if (wasm !== undefined) return wasm;


    if (module_or_path !== undefined) {
        if (Object.getPrototypeOf(module_or_path) === Object.prototype) {
            ({module_or_path} = module_or_path)
        } else {
            console.warn('using deprecated parameters for the initialization function; pass a single object instead')
        }
    }

    if (module_or_path === undefined) {
        module_or_path = new URL('sellmax_web_bg.wasm', import.meta.url);
    }
    const imports = __wbg_get_imports();

    if (typeof module_or_path === 'string' || (typeof Request === 'function' && module_or_path instanceof Request) || (typeof URL === 'function' && module_or_path instanceof URL)) {
        module_or_path = fetch(module_or_path);
    }

    const { instance, module } = await __wbg_load(await module_or_path, imports);

    return __wbg_finalize_init(instance, module);
}

export { initSync, __wbg_init as default };
