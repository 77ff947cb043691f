import { writeFileSync } from "fs";
import yargs from "yargs";
import { FigureKind, renderFigure } from "./render";

export function main(argv: string[]): number {
  const args = yargs(argv)
    .usage("render --kind collapse|comparison|envelope --in file.csv --out fig.svg")
    .option("kind", {
      choices: ["collapse", "comparison", "envelope"] as const,
      demandOption: true,
      describe: "figure kind",
    })
    .option("in", {
      type: "string",
      array: true,
      demandOption: true,
      describe: "sweep CSV input (repeat to overlay several)",
    })
    .option("out", { type: "string", demandOption: true, describe: "output SVG path" })
    .strict()
    .exitProcess(false)
    .fail((msg) => {
      throw new Error(msg);
    })
    .parseSync();
  // render fully before touching the filesystem: a bad CSV leaves no file
  const svg = renderFigure({ kind: args.kind as FigureKind, inputs: args.in });
  writeFileSync(args.out, svg, "ascii");
  console.log(args.out);
  return 0;
}

if (require.main === module) {
  try {
    process.exitCode = main(process.argv.slice(2));
  } catch (err) {
    console.error(`render: error: ${err instanceof Error ? err.message : String(err)}`);
    process.exitCode = 1;
  }
}
