// Search form state. Pure functions over plain objects so the rules can be
// exercised without a browser; app.js owns the DOM.
(function (root, factory) {
  if (typeof module === "object" && module.exports) module.exports = factory();
  else root.HistoSeekForm = factory();
})(typeof self !== "undefined" ? self : this, function () {
  "use strict";

  function boundsOf(domains, name) {
    const d = domains.find((x) => x.name === name);
    return d ? [d.rel_min, d.rel_max] : [0, 0];
  }

  function initialState(domains) {
    const domain = domains.length ? domains[0].name : "";
    return {
      imageUrl: "",
      imageFile: null,
      mode: "exact",
      tolerance: 0,
      domain: domain,
      relRange: boundsOf(domains, domain),
    };
  }

  function toleranceReadOnly(state) {
    return state.mode === "exact";
  }

  function setMode(state, mode) {
    if (mode !== "exact" && mode !== "probable") return state;
    return Object.assign({}, state, { mode: mode, tolerance: 0 });
  }

  // Ignored in exact mode and for anything but an integer in [0, 100].
  function setTolerance(state, raw) {
    if (toleranceReadOnly(state)) return state;
    const text = String(raw).trim();
    if (!/^\d+$/.test(text)) return state;
    const value = Number(text);
    if (value > 100) return state;
    return Object.assign({}, state, { tolerance: value });
  }

  function selectDomain(state, name, domains) {
    if (!domains.some((d) => d.name === name)) return state;
    return Object.assign({}, state, { domain: name, relRange: boundsOf(domains, name) });
  }

  function setRange(state, min, max) {
    return Object.assign({}, state, { relRange: [Number(min), Number(max)] });
  }

  function validate(state) {
    const errors = [];
    if (!state.imageFile && !state.imageUrl.trim()) {
      errors.push({ field: "image", message: "Choose an image file or enter an image URL." });
    }
    if (!state.domain) errors.push({ field: "domain", message: "Select a domain." });
    const t = state.tolerance;
    if (!Number.isInteger(t) || t < 0 || t > 100 || (state.mode === "exact" && t !== 0)) {
      errors.push({ field: "tolerance", message: "Tolerance must be an integer from 0 to 100." });
    }
    const [lo, hi] = state.relRange;
    if (!Number.isFinite(lo) || !Number.isFinite(hi) || lo > hi) {
      errors.push({ field: "relevance_range", message: "Relevance range needs min <= max." });
    }
    return errors;
  }

  // `imageB64` is used when a file is selected; otherwise the URL is sent.
  function buildRequest(state, imageB64) {
    const body = {
      mode: state.mode,
      tolerance: state.mode === "exact" ? 0 : state.tolerance,
      domain: state.domain,
      relevance_range: [state.relRange[0], state.relRange[1]],
    };
    if (state.imageFile) body.image_b64 = imageB64;
    else body.image_url = state.imageUrl.trim();
    return body;
  }

  // Gallery cards in the order the server ranked them.
  function galleryItems(response) {
    return (response.results || []).map((r) => ({
      rank: r.rank,
      thumb: "/api/thumb/" + encodeURIComponent(r.id),
      imageUrl: r.image_url,
      pageUrl: r.page_url,
      similarity: r.similarity.toFixed(2),
      relevance: r.relevance,
    }));
  }

  function errorMessage(status, payload) {
    const e = payload && payload.error;
    if (e && e.message) return (e.field ? e.field + ": " : "") + e.message;
    return "Request failed with HTTP " + status + ".";
  }

  return {
    initialState,
    toleranceReadOnly,
    setMode,
    setTolerance,
    selectDomain,
    setRange,
    validate,
    buildRequest,
    galleryItems,
    errorMessage,
  };
});
