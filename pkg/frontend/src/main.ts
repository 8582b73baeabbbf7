/** Entry point: reads the form, opens a session and mounts the board page. */

import { ServiceClient } from "./api.js";
import { BoardController } from "./controller.js";
import { BoardPage } from "./ui.js";

function field(id: string): HTMLInputElement {
  return document.getElementById(id) as HTMLInputElement;
}

async function startSession(): Promise<void> {
  const base = field("service-url").value || "http://127.0.0.1:8177";
  const mode = (document.getElementById("mode") as HTMLSelectElement).value;
  const operation = (document.getElementById("operation") as HTMLSelectElement).value;
  const operandsText = field("operands").value.trim();

  const client = new ServiceClient(base);
  const operands = operandsText
    ? operandsText.split(",").map((part) => {
        const value = Number(part.trim());
        return { value: Math.abs(value), sign: value < 0 ? -1 : 1 };
      })
    : undefined;

  const status = await client.createSession(
    mode === "free" ? { mode } : { mode, operation, operands }
  );
  const controller = await BoardController.open(client, status.id);
  const root = document.getElementById("app")!;
  root.replaceChildren();
  const page = new BoardPage(controller, root, {
    hideValue: mode === "atipanakuy",
    showAllMatches: field("show-all").checked,
  });
  page.start();
}

document.getElementById("start")!.addEventListener("click", () => {
  void startSession().catch((error) => {
    const note = document.getElementById("error")!;
    note.textContent = String(error);
  });
});
