"use strict";

const F = HistoSeekForm;
let domains = [];
let state = F.initialState([]);

const $ = (id) => document.getElementById(id);

function showBanner(text) {
  $("banner-text").textContent = text;
  $("banner").hidden = false;
}

function showFieldErrors(errors) {
  document.querySelectorAll(".field-error").forEach((el) => (el.textContent = ""));
  for (const e of errors) {
    const el = $("err-" + e.field);
    if (el) el.textContent = e.message;
  }
}

function render() {
  $("mode-exact").checked = state.mode === "exact";
  $("mode-probable").checked = state.mode === "probable";
  $("tolerance").value = state.tolerance;
  $("tolerance").readOnly = F.toleranceReadOnly(state);
  $("rel-min").value = state.relRange[0];
  $("rel-max").value = state.relRange[1];
  document.querySelectorAll('input[name="domain"]').forEach((el) => {
    el.checked = el.value === state.domain;
  });
}

function renderDomains() {
  const box = $("domains");
  box.textContent = "";
  for (const d of domains) {
    const label = document.createElement("label");
    const radio = document.createElement("input");
    radio.type = "radio";
    radio.name = "domain";
    radio.value = d.name;
    radio.addEventListener("change", () => {
      state = F.selectDomain(state, d.name, domains);
      render();
    });
    label.append(radio, " " + d.name);
    box.append(label);
  }
  if (!domains.length) box.textContent = "No indexed domains yet.";
}

function renderGallery(items) {
  const gallery = $("gallery");
  gallery.textContent = "";
  if (!items.length) {
    const p = document.createElement("p");
    p.className = "placeholder";
    p.textContent = "No matches.";
    gallery.append(p);
    return;
  }
  for (const item of items) {
    const card = document.createElement("figure");
    const img = document.createElement("img");
    img.src = item.thumb;
    img.alt = item.imageUrl;
    img.onerror = () => (img.src = item.imageUrl);
    const caption = document.createElement("figcaption");
    const link = document.createElement("a");
    link.href = item.pageUrl;
    link.target = "_blank";
    link.rel = "noopener";
    link.textContent = item.pageUrl;
    caption.append("#" + item.rank + "  similarity " + item.similarity + "  ", link);
    card.append(img, caption);
    gallery.append(card);
  }
}

function readFileB64(file) {
  return new Promise((resolve, reject) => {
    const reader = new FileReader();
    reader.onload = () => resolve(String(reader.result).split(",", 2)[1] || "");
    reader.onerror = () => reject(reader.error);
    reader.readAsDataURL(file);
  });
}

async function submit(event) {
  event.preventDefault();
  $("banner").hidden = true;
  state = F.setRange(state, $("rel-min").value, $("rel-max").value);
  const errors = F.validate(state);
  showFieldErrors(errors);
  if (errors.length) return;
  try {
    const b64 = state.imageFile ? await readFileB64(state.imageFile) : "";
    const res = await fetch("/api/search", {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(F.buildRequest(state, b64)),
    });
    const payload = await res.json().catch(() => null);
    if (!res.ok) {
      showBanner(F.errorMessage(res.status, payload));
      return;
    }
    renderGallery(F.galleryItems(payload));
  } catch (err) {
    showBanner("Search service unreachable: " + err.message);
  }
}

async function init() {
  $("mode-exact").addEventListener("change", () => { state = F.setMode(state, "exact"); render(); });
  $("mode-probable").addEventListener("change", () => { state = F.setMode(state, "probable"); render(); });
  $("tolerance").addEventListener("input", (e) => {
    state = F.setTolerance(state, e.target.value);
    render();
  });
  $("image-url").addEventListener("input", (e) => (state = Object.assign({}, state, { imageUrl: e.target.value })));
  $("image-file").addEventListener("change", (e) => {
    state = Object.assign({}, state, { imageFile: e.target.files[0] || null });
  });
  $("banner-close").addEventListener("click", () => ($("banner").hidden = true));
  $("search-form").addEventListener("submit", submit);
  try {
    const res = await fetch("/api/domains");
    domains = await res.json();
  } catch (err) {
    showBanner("Could not load domains: " + err.message);
  }
  state = F.initialState(domains);
  renderDomains();
  render();
}

init();
