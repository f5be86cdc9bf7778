"""Command-line client for the service.

By default each command drives the FastAPI app in-process (no socket, fully
deterministic); ``--base-url`` points it at a running instance instead.

Exit codes: 0 when everything passed (or the two expressions are equal),
1 when a check failed (or the expressions differ), 2 on usage or parse errors.
"""

from __future__ import annotations

import argparse
import asyncio
import json
import sys
from typing import Optional

import httpx

from . import __version__
from .suites import DEFAULT_SEED, SUITE_NAMES


class ServiceClient:
    """Thin HTTP client; in-process ASGI unless a base URL is given."""

    def __init__(self, base_url: Optional[str] = None):
        self.base_url = base_url

    def post(self, path: str, payload: dict) -> httpx.Response:
        if self.base_url:
            with httpx.Client(base_url=self.base_url, timeout=600.0) as client:
                return client.post(path, json=payload)
        from .service import app

        async def _go():
            transport = httpx.ASGITransport(app=app)
            async with httpx.AsyncClient(transport=transport,
                                         base_url="http://service") as client:
                return await client.post(path, json=payload)

        return asyncio.run(_go())


def _fail_usage(message: str) -> "SystemExit":
    print(f"error: {message}", file=sys.stderr)
    return SystemExit(2)


def _checked(response: httpx.Response) -> dict:
    if response.status_code == 200:
        return response.json()
    try:
        detail = response.json().get("detail")
    except ValueError:
        detail = response.text
    if isinstance(detail, dict) and "message" in detail:
        message = detail["message"]
        if "line" in detail:
            message += f" (line {detail['line']}, column {detail['column']})"
            if detail.get("expected"):
                message += f"; expected one of {detail['expected']}"
    else:
        message = json.dumps(detail)
    raise _fail_usage(message)


def _dump(obj: dict) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def _add_backend_options(parser: argparse.ArgumentParser):
    parser.add_argument("--backend", choices=("exact", "numeric"), default="exact",
                        help="coefficient backend (numeric is a cross-check only)")
    parser.add_argument("--precision", type=int, default=128,
                        help="bits for the numeric backend (default 128)")
    parser.add_argument("--tolerance", type=float, default=1e-10,
                        help="numeric is-zero tolerance (default 1e-10)")


def _add_suite_options(parser: argparse.ArgumentParser):
    parser.add_argument("--suite", required=True, choices=SUITE_NAMES)
    parser.add_argument("--n", required=True, type=int, help="ambient rank")
    _add_backend_options(parser)
    parser.add_argument("--seed", type=int, default=DEFAULT_SEED,
                        help=f"seed for randomized checks (default {DEFAULT_SEED:#x})")
    parser.add_argument("--samples", type=int, default=50,
                        help="sample count for randomized checks (default 50)")
    parser.add_argument("--max-terms", type=int, default=None,
                        help="expansion guard: cap on rewritten words (default 2e6)")
    parser.add_argument("--normalization", choices=("scaled", "unscaled", "both"),
                        default="both",
                        help="which generator normalisation the exchange suite runs")


def _verify_payload(args) -> dict:
    payload = {
        "suite": args.suite, "n": args.n, "backend": args.backend,
        "seed": args.seed, "samples": args.samples, "precision": args.precision,
        "tolerance": args.tolerance, "normalization": args.normalization,
    }
    if args.max_terms is not None:
        payload["max_terms"] = args.max_terms
    return payload


def _cmd_eval(client: ServiceClient, args) -> int:
    payload = {"expr": args.expr, "n": args.n, "backend": args.backend,
               "precision": args.precision, "tolerance": args.tolerance}
    data = _checked(client.post("/eval", payload))
    if args.json:
        print(_dump(data))
    else:
        print(data["display"])
    return 0


def _cmd_eq(client: ServiceClient, args) -> int:
    payload = {"lhs": args.lhs, "rhs": args.rhs, "n": args.n,
               "backend": args.backend, "precision": args.precision,
               "tolerance": args.tolerance}
    if args.max_terms is not None:
        payload["max_terms"] = args.max_terms
    data = _checked(client.post("/eq", payload))
    if args.json:
        print(_dump(data))
    else:
        print("equal" if data["equal"] else "different")
    return 0 if data["equal"] else 1


def _cmd_verify(client: ServiceClient, args) -> int:
    data = _checked(client.post("/verify", _verify_payload(args)))
    if args.json:
        print(_dump(data))
    else:
        for check in data["checks"]:
            mark = {"pass": "ok", "fail": "FAIL", "skipped": "--"}[check["status"]]
            line = f"[{mark:>4}] {check['id']}"
            if check.get("detail"):
                line += f": {check['detail']}"
            print(line)
        counts = {"pass": 0, "fail": 0, "skipped": 0}
        for check in data["checks"]:
            counts[check["status"]] += 1
        print(f"suite={data['suite']} n={data['n']} backend={data['backend']} "
              f"pass={counts['pass']} fail={counts['fail']} "
              f"skipped={counts['skipped']} elapsed={data['elapsed_ms']}ms")
    return 0 if data["passed"] else 1


def _cmd_report(client: ServiceClient, args) -> int:
    data = _checked(client.post("/verify", _verify_payload(args)))
    text = _dump(data)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(text + "\n")
    else:
        print(text)
    return 0 if data["passed"] else 1


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import app
    uvicorn.run(app, host=args.host, port=args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cuntzalg",
        description="Exact symbolic computation in Cuntz algebras: evaluate "
                    "expressions, decide equality, and run verification suites.")
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("--base-url", default=None,
                        help="target a running service instead of in-process")
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="parse and evaluate an expression")
    p_eval.add_argument("expr")
    p_eval.add_argument("--n", required=True, type=int, help="ambient rank")
    _add_backend_options(p_eval)
    p_eval.add_argument("--json", action="store_true")
    p_eval.set_defaults(func=_cmd_eval)

    p_eq = sub.add_parser("eq", help="decide equality of two expressions")
    p_eq.add_argument("lhs")
    p_eq.add_argument("rhs")
    p_eq.add_argument("--n", required=True, type=int, help="ambient rank")
    _add_backend_options(p_eq)
    p_eq.add_argument("--max-terms", type=int, default=None)
    p_eq.add_argument("--json", action="store_true")
    p_eq.set_defaults(func=_cmd_eq)

    p_verify = sub.add_parser("verify", help="run a verification suite")
    _add_suite_options(p_verify)
    p_verify.add_argument("--json", action="store_true")
    p_verify.set_defaults(func=_cmd_verify)

    p_report = sub.add_parser("report", help="run a suite and emit the JSON report")
    _add_suite_options(p_report)
    p_report.add_argument("--out", default=None, help="write the report to a file")
    p_report.set_defaults(func=_cmd_report)

    p_serve = sub.add_parser("serve", help="run the HTTP service")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8000)
    p_serve.set_defaults(func=_cmd_serve)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors and 0 on --help; keep the contract
        return int(exc.code or 0)
    if args.command == "serve":
        return _cmd_serve(args)
    client = ServiceClient(args.base_url)
    try:
        return args.func(client, args)
    except SystemExit as exc:
        return int(exc.code or 0)
    except httpx.HTTPError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
