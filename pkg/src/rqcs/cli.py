"""Command-line front end.

Exit codes: 0 success, 1 verification reject or attack failure, 2 usage or
format error.  Errors go to stderr as a single JSON line.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import codec
from .attack import AttackFailedError, recover_key, signing_oracle
from .bench import bench, resolve_instances, rows_to_csv, rows_to_json
from .field import FieldError
from .params import INSTANCES, ParameterError, setup
from .scheme import keygen, sign, verify
from .xof import Xof, derive_seed


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _emit_error(kind: str, message: str) -> None:
    sys.stderr.write(json.dumps({"error": kind, "message": message}) + "\n")


def _seed(text: str | None) -> bytes:
    if text is None:
        return os.urandom(32)
    try:
        return bytes.fromhex(text)
    except ValueError as exc:
        raise UsageError(f"seed must be hex: {text!r}") from exc


def _params_from_args(args):
    inst = args.instance.lower()
    if inst == "custom":
        return setup("custom", m=args.m, n=args.n, w=args.w, w_r=args.w_r, w_g=args.w_g)
    return setup(inst)


def _add_custom(p):
    p.add_argument("--m", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--w", type=int)
    p.add_argument("--w-r", dest="w_r", type=int)
    p.add_argument("--w-g", dest="w_g", type=int)


def _print(doc) -> None:
    print(json.dumps(doc))


def cmd_params(args) -> int:
    if args.action == "list":
        for name in INSTANCES:
            _print(setup(name).describe())
        return 0
    if not args.instance:
        raise UsageError("params show needs an instance")
    _print(_params_from_args(args).describe())
    return 0


def cmd_keygen(args) -> int:
    params = _params_from_args(args)
    pk, sk = keygen(params, Xof(_seed(args.seed)))
    codec.write_json(args.out, codec.keypair_doc(params, pk, sk))
    if args.pk_out:
        codec.write_json(args.pk_out, codec.public_key_doc(params, pk))
    _print({"keypair": str(args.out), "instance": params.name})
    return 0


def _load_pk_sk(pk_path, sk_path):
    pparams, pk = codec.public_key_from_doc(codec.read_json(pk_path))
    sparams, sk = codec.secret_key_from_doc(codec.read_json(sk_path))
    if pparams != sparams:
        raise codec.FormatError("public and secret key use different parameters")
    return pparams, pk, sk


def cmd_sign(args) -> int:
    params, pk, sk = _load_pk_sk(args.pk, args.sk)
    msg = Path(args.msg).read_bytes()
    sig = sign(sk, pk, msg, params, Xof(_seed(args.seed)))
    codec.write_json(args.out, codec.signature_doc(params, sig))
    _print({"signature": str(args.out)})
    return 0


def cmd_verify(args) -> int:
    params, pk = codec.public_key_from_doc(codec.read_json(args.pk))
    sparams, sig = codec.signature_from_doc(codec.read_json(args.sig))
    if sparams != params:
        verdict_ok, reason = False, "signature parameters differ from the public key"
    else:
        v = verify(pk, Path(args.msg).read_bytes(), sig, params)
        verdict_ok, reason = v.ok, v.reason
    _print({"valid": verdict_ok, "reason": reason})
    return 0 if verdict_ok else 1


def cmd_attack(args) -> int:
    target_sk = None
    if args.pk:
        params, pk = codec.public_key_from_doc(codec.read_json(args.pk))
        if args.target_sk:
            sparams, target_sk = codec.secret_key_from_doc(codec.read_json(args.target_sk))
            if sparams != params:
                raise codec.FormatError("target secret key uses different parameters")
    elif args.instance:
        params = _params_from_args(args)
        seed = _seed(args.seed)
        pk, target_sk = keygen(params, Xof(derive_seed(seed, "keygen")))
    else:
        raise UsageError("attack needs --pk or --instance")

    if args.oracle == "self":
        if target_sk is None:
            raise UsageError("--oracle self needs --target-sk (or --instance)")
        source = signing_oracle(target_sk, pk, params, Xof(derive_seed(_seed(args.seed), "oracle")))
    else:
        if not (args.sig and args.msg):
            raise UsageError("--oracle file needs --sig and --msg")
        sparams, sig = codec.signature_from_doc(codec.read_json(args.sig))
        if sparams != params:
            raise codec.FormatError("signature parameters differ from the public key")
        source = iter([(Path(args.msg).read_bytes(), sig)])

    try:
        report = recover_key(pk, source, params, max_retries=args.max_retries, target_sk=target_sk)
        code = 0
    except AttackFailedError as exc:
        report = exc.report
        code = 1
    doc = report.to_dict()
    if args.out:
        codec.write_json(args.out, doc)
    if args.sk_out and report.recovered_sk is not None:
        codec.write_json(args.sk_out, codec.secret_key_doc(params, report.recovered_sk))
    _print(doc)
    return code


def cmd_bench(args) -> int:
    instances = resolve_instances(args.instances)
    rows, results = bench(instances, args.trials, _seed(args.seed), jobs=args.jobs,
                          max_retries=args.max_retries)
    if args.csv:
        Path(args.csv).write_text(rows_to_csv(rows))
    if args.json:
        Path(args.json).write_text(rows_to_json(rows, results))
    sys.stdout.write(rows_to_csv(rows))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="rqcs", description="RQCS signatures and key recovery")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("params", help="list or show parameter sets")
    p.add_argument("action", choices=["list", "show"])
    p.add_argument("instance", nargs="?")
    _add_custom(p)
    p.set_defaults(func=cmd_params)

    p = sub.add_parser("keygen", help="generate a key pair")
    p.add_argument("--instance", required=True)
    _add_custom(p)
    p.add_argument("--seed")
    p.add_argument("--out", required=True)
    p.add_argument("--pk-out")
    p.set_defaults(func=cmd_keygen)

    p = sub.add_parser("sign", help="sign a message file")
    p.add_argument("--sk", required=True)
    p.add_argument("--pk", required=True)
    p.add_argument("--msg", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--seed")
    p.set_defaults(func=cmd_sign)

    p = sub.add_parser("verify", help="verify a signature")
    p.add_argument("--pk", required=True)
    p.add_argument("--msg", required=True)
    p.add_argument("--sig", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("attack", help="recover a secret key from the public key and signatures")
    p.add_argument("--pk")
    p.add_argument("--instance")
    _add_custom(p)
    p.add_argument("--target-sk")
    p.add_argument("--oracle", choices=["self", "file"], default="self")
    p.add_argument("--sig")
    p.add_argument("--msg")
    p.add_argument("--seed")
    p.add_argument("--max-retries", type=int, default=10)
    p.add_argument("--out")
    p.add_argument("--sk-out")
    p.set_defaults(func=cmd_attack)

    p = sub.add_parser("bench", help="repeat the attack and tabulate timings")
    p.add_argument("--instances", default="all")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", default="00")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--max-retries", type=int, default=10)
    p.add_argument("--csv")
    p.add_argument("--json")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        _emit_error("usage", str(exc))
    except (codec.FormatError, ParameterError, FieldError) as exc:
        _emit_error("format", str(exc))
    except OSError as exc:
        _emit_error("io", str(exc))
    return 2
