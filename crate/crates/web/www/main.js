import init, { analyze_spec, mrd_spectrum, uniform_betti } from "./pkg/qspectra_web.js";

function wire(id, compute) {
  const form = document.getElementById(id);
  const out = document.getElementById(`${id}-out`);
  form.addEventListener("submit", (ev) => {
    ev.preventDefault();
    const data = new FormData(form);
    const num = (k) => Number(data.get(k));
    out.classList.remove("error");
    out.textContent = "working...";
    setTimeout(() => {
      try {
        out.textContent = compute(data, num);
      } catch (e) {
        out.classList.add("error");
        out.textContent = String(e.message ?? e);
      }
    });
  });
}

await init();

wire("mrd", (_, num) => mrd_spectrum(num("q"), num("m"), num("n"), num("k"), num("r"), true));
wire("analyze", (data, num) => analyze_spec(data.get("spec"), num("r"), !data.get("json")));
wire("betti", (_, num) => uniform_betti(num("q"), num("n"), num("k")));
