"""Batch command-line client for the verification service.

The CLI builds the same request payloads as the HTTP API and runs them
in-process by default, so batch jobs need no server and identical inputs
with the same seed produce byte-identical JSON.  Pass --server URL to send
the request to a running service instead.

Exit codes: 0 verified/success, 1 refuted (witness in the payload),
2 unknown or budget exceeded, 3 input error, 4 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import sys
import urllib.request

from .service.dispatch import COMMANDS, dispatch_command

_GROUPS = sorted({c.split()[0] for c in COMMANDS} | {"report"})


def build_parser():
    parser = argparse.ArgumentParser(
        prog="trivspec",
        description="Exact toolkit for trivial-spectrum matrix spaces over division algebras",
    )
    parser.add_argument("group", choices=_GROUPS, help="command group")
    parser.add_argument("subcommand", help="subcommand within the group")
    parser.add_argument("--in", dest="infile", help="JSON input file merged into the request")
    parser.add_argument("--seed", type=int, default=0, help="seed for all randomness")
    parser.add_argument("--budget", type=int, default=2**22, help="element-check budget")
    parser.add_argument(
        "--deterministic",
        action="store_true",
        help="force full scans before reporting witnesses",
    )
    parser.add_argument("--format", choices=["json", "text"], default="json")
    parser.add_argument("--server", help="POST to a running service instead of in-process")
    parser.add_argument("--out", help="also write the JSON response to this file")
    # inline request fields shared by many commands
    parser.add_argument("--algebra", dest="algebra_spec", help="compact algebra spec or JSON file")
    parser.add_argument("--field", help="prime field spec for searches, e.g. fp:3")
    parser.add_argument("--degree", type=int, default=1)
    parser.add_argument("--n", type=int)
    parser.add_argument("--p", type=int)
    parser.add_argument("--r", type=int)
    parser.add_argument("--alpha", dest="alpha_scalar", help="scalar for equivalence checks")
    parser.add_argument(
        "--partition", help="comma-separated block sizes for affine-nonsingular"
    )
    return parser


def _load_json(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        return {"__error__": f"malformed JSON at line {exc.lineno} column {exc.colno}: {exc.msg}"}
    except OSError as exc:
        return {"__error__": str(exc)}


def build_args(ns):
    args = {}
    if ns.infile:
        body = _load_json(ns.infile)
        if "__error__" in body:
            return None, body["__error__"]
        if not isinstance(body, dict):
            return None, "input file must hold a JSON object"
        args.update(body)
    args["seed"] = ns.seed
    args["budget"] = ns.budget
    args["deterministic"] = ns.deterministic
    if ns.algebra_spec:
        if ns.algebra_spec.endswith(".json"):
            body = _load_json(ns.algebra_spec)
            if "__error__" in body:
                return None, body["__error__"]
            args["algebra"] = body
        else:
            args["algebra_spec"] = ns.algebra_spec
    if ns.field:
        args["field"] = ns.field
    if ns.degree is not None:
        args["degree"] = ns.degree
    for name in ("n", "p", "r"):
        value = getattr(ns, name)
        if value is not None:
            args[name] = value
    if ns.alpha_scalar is not None:
        args["alpha"] = ns.alpha_scalar
    if ns.partition:
        try:
            args["partition"] = [int(x) for x in ns.partition.split(",")]
        except ValueError:
            return None, "partition must be comma-separated integers"
    return args, None


def _post_to_server(server, command, args):
    url = server.rstrip("/") + "/v1/" + command.replace(" ", "/")
    data = json.dumps(args).encode("utf-8")
    req = urllib.request.Request(
        url, data=data, headers={"Content-Type": "application/json"}
    )
    with urllib.request.urlopen(req) as resp:
        return json.loads(resp.read().decode("utf-8"))


def render_text(payload):
    lines = [f"command: {payload.get('command')}", f"status: {payload.get('status')}"]
    result = payload.get("result") or {}
    verdict = result.get("verdict")
    if verdict:
        lines.append(f"verdict: {verdict.get('kind')}")
        if verdict.get("reason"):
            lines.append(f"reason: {verdict['reason']}")
        if verdict.get("witness") is not None:
            lines.append(f"witness: {json.dumps(verdict['witness'], sort_keys=True)}")
    for key in ("dim", "alpha", "max", "rank", "codim", "equivalent"):
        if key in result:
            lines.append(f"{key}: {result[key]}")
    error = payload.get("error")
    if error:
        lines.append(f"error: {error.get('type')}: {error.get('message')}")
        if error.get("details"):
            lines.append(f"details: {json.dumps(error['details'], sort_keys=True)}")
    return "\n".join(lines)


def main(argv=None):
    parser = build_parser()
    ns = parser.parse_args(argv)
    command = f"{ns.group} {ns.subcommand}"
    if command not in COMMANDS and command != "report bundle":
        print(
            json.dumps(
                {
                    "schema": "trivspec/1",
                    "command": command,
                    "status": "error",
                    "exit_code": 3,
                    "error": {
                        "type": "InputError",
                        "message": f"unknown command; choose from {sorted(COMMANDS) + ['report bundle']}",
                    },
                },
                sort_keys=True,
            )
        )
        return 3
    args, err = build_args(ns)
    if err is not None:
        print(
            json.dumps(
                {
                    "schema": "trivspec/1",
                    "command": command,
                    "status": "error",
                    "exit_code": 3,
                    "error": {"type": "InputError", "message": err},
                },
                sort_keys=True,
            )
        )
        return 3
    if ns.server:
        payload = _post_to_server(ns.server, command, args)
    else:
        payload = dispatch_command(command, args).payload()
    text = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    if ns.out:
        with open(ns.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    if ns.format == "text":
        print(render_text(payload))
    else:
        print(text)
    return int(payload.get("exit_code", 4))


if __name__ == "__main__":
    sys.exit(main())
