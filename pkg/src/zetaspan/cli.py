"""Command-line client for the experiment runner.

Runs in-process by default; with --server URL it becomes a thin HTTP client
of a running service instance (same configs, same reports, same exit
codes).  All parameters live on the command line, so identical invocations
produce byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict

import httpx

from .experiments import ExperimentConfig, render_report, run_batch, run_config


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zetaspan",
        description=(
            "Hurwitz zeta values at rationals, cotangent-derivative and "
            "Euler-factor identity checks, exact cyclotomic ratios, and "
            "integer-relation probes of zeta value families."
        ),
    )
    parser.add_argument(
        "--server",
        metavar="URL",
        help="base URL of a running zetaspan service; runs remotely when given",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_command(name: str, help_text: str) -> argparse.ArgumentParser:
        cmd = sub.add_parser(name, help=help_text)
        cmd.add_argument("--format", choices=("json", "csv"), default="json",
                         dest="output_format", help="output format (default json)")
        return cmd

    def add_digits(cmd: argparse.ArgumentParser) -> None:
        cmd.add_argument("--digits", type=int, default=100,
                         help="decimal working precision (default 100)")

    cmd = add_command("expand-cot", "integer coefficient table of D^(k-1)(pi cot pi z)")
    cmd.add_argument("--k", type=int, required=True)

    cmd = add_command("eval-zeta", "evaluate zeta(k, a/q)")
    for flag in ("--k", "--q", "--a"):
        cmd.add_argument(flag, type=int, required=True)
    add_digits(cmd)

    cmd = add_command("verify-lemma3", "check the cotangent reflection identity")
    for flag in ("--k", "--q", "--a"):
        cmd.add_argument(flag, type=int, required=True)
    add_digits(cmd)

    cmd = add_command("verify-lemma4", "check the Euler-factor identity")
    for flag in ("--k", "--q"):
        cmd.add_argument(flag, type=int, required=True)
    add_digits(cmd)

    cmd = add_command("exact-ratio",
                      "exact cyclotomic value of the odd-k reflection ratio")
    for flag in ("--k", "--q", "--a"):
        cmd.add_argument(flag, type=int, required=True)
    add_digits(cmd)

    cmd = add_command("probe-dim", "integer-relation probe of a zeta value family")
    for flag in ("--k", "--q"):
        cmd.add_argument(flag, type=int, required=True)
    cmd.add_argument("--mode", choices=("full", "plus", "minus"), default="full")
    cmd.add_argument("--bound", type=int, required=True,
                     help="coefficient bound for the relation search")
    add_digits(cmd)

    cmd = add_command("probe-zeta",
                      "probe for zeta(k) over the minus combinations (odd k)")
    for flag in ("--k", "--q"):
        cmd.add_argument(flag, type=int, required=True)
    cmd.add_argument("--bound", type=int, required=True)
    add_digits(cmd)

    cmd = add_command("find-relation", "integer-relation search over given reals")
    cmd.add_argument("--value", action="append", dest="values", metavar="DECIMAL",
                     required=True, help="repeatable; one decimal value per flag")
    cmd.add_argument("--bound", type=int, required=True)
    add_digits(cmd)

    cmd = add_command("subfield-test",
                      "test membership of a cyclotomic element in Q(zeta_d)")
    cmd.add_argument("--element", required=True,
                     help="element text, e.g. '5; 0, 1, 0, 1'")
    cmd.add_argument("--d", type=int, required=True)

    cmd = sub.add_parser("batch", help="run one JSON config per line from a file")
    cmd.add_argument("path", help="file with one JSON config per line")

    return parser


def _config_from_args(args: argparse.Namespace) -> ExperimentConfig:
    config = ExperimentConfig(command=args.command)
    for name in ("k", "q", "a", "d", "digits", "bound", "mode", "output_format", "element"):
        if hasattr(args, name) and getattr(args, name) is not None:
            setattr(config, name, getattr(args, name))
    if getattr(args, "values", None) is not None:
        config.values = tuple(args.values)
    return config


def _run_remote(server: str, config: ExperimentConfig) -> tuple[int, dict]:
    payload = {k: v for k, v in asdict(config).items()
               if v is not None and k != "output_format"}
    if "values" in payload:
        payload["values"] = list(payload["values"])
    url = server.rstrip("/") + "/run"
    try:
        response = httpx.post(url, json=payload, timeout=None)
    except httpx.HTTPError as exc:
        raise ValueError(f"cannot reach server {server}: {exc}") from None
    if response.status_code != 200:
        try:
            detail = response.json().get("detail", response.text)
        except json.JSONDecodeError:
            detail = response.text
        raise ValueError(f"server rejected the request: {detail}")
    body = response.json()
    return body["exit_code"], body["report"]


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse already printed a usage message; 2 for usage errors
        return exc.code if isinstance(exc.code, int) else 2

    try:
        if args.command == "batch":
            try:
                with open(args.path, encoding="utf-8") as handle:
                    lines = handle.read().splitlines()
            except OSError as exc:
                print(f"usage error: cannot read {args.path}: {exc}", file=sys.stderr)
                return 2
            code, outputs = run_batch(lines)
            for line in outputs:
                print(line)
            return code

        config = _config_from_args(args)
        if args.server:
            code, report = _run_remote(args.server, config)
        else:
            code, report = run_config(config)
        print(render_report(report, config.output_format))
        return code
    except ValueError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
