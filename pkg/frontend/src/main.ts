import { Client } from "./api.js";
import { BoardController } from "./controller.js";
import { BoardView } from "./view.js";

const api = new Client("");
const ctl = new BoardController(api);
new BoardView(document.body, ctl);

const presetSelect = document.querySelector("#preset") as HTMLSelectElement;
const loadBtn = document.querySelector("#load") as HTMLButtonElement;
const normalizeBtn = document.querySelector("#normalize") as HTMLButtonElement;
const pauseBtn = document.querySelector("#pause") as HTMLButtonElement;
const backBtn = document.querySelector("#step-back") as HTMLButtonElement;
const fwdBtn = document.querySelector("#step-fwd") as HTMLButtonElement;
const speed = document.querySelector("#speed") as HTMLInputElement;

loadBtn.addEventListener("click", () => {
  const seed = Math.floor(Math.random() * 1e6);
  void ctl.loadPreset(presetSelect.value, seed);
});
normalizeBtn.addEventListener("click", () => {
  if (ctl.stoneCount === 0) return;
  void ctl.animateNormalization();
});
pauseBtn.addEventListener("click", () => {
  const a = ctl.animation;
  if (!a) return;
  if (a.playing) ctl.pause();
  else void ctl.play();
});
backBtn.addEventListener("click", () => {
  ctl.pause();
  ctl.stepBack();
});
fwdBtn.addEventListener("click", () => {
  ctl.pause();
  ctl.stepForward();
});
speed.addEventListener("input", () => {
  ctl.speedMs = 420 - Number(speed.value);
});

void ctl.loadPreset("line-5");
