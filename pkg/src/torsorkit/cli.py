"""Command-line surface.

Exit codes: 0 all checks pass, 1 an axiom suite failed (the report is still
printed), 2 malformed input or usage.
"""
from __future__ import annotations

import argparse
import sys

from . import compose as compose_mod
from . import cotorsor as cotorsor_mod
from . import files
from . import gallery as gallery_mod
from . import torsor as torsor_mod
from .algebra import AlgebraPresentation, verify_algebra
from .cotorsor import CotorsorPresentation, verify_cotorsor
from .errors import ReferenceHopfMismatch, TorsorKitError, VerificationFailure
from .exactlin import LinearMap, invert_map
from .hopf import HopfPresentation, TwistData, build_twist, hopf_iso, twist_hopf, verify_hopf, verify_twist
from .report import Report
from .torsor import TorsorPresentation, compute_side_hopf, verify_torsor


def _print_report(report: Report, out):
    for line in report.lines():
        print(line, file=out)


def _verify_any(obj) -> Report:
    if isinstance(obj, TorsorPresentation):
        return verify_torsor(obj)
    if isinstance(obj, HopfPresentation):
        return verify_hopf(obj)
    if isinstance(obj, AlgebraPresentation):
        return verify_algebra(obj)
    if isinstance(obj, CotorsorPresentation):
        return verify_cotorsor(obj)
    if isinstance(obj, TwistData):
        return verify_twist(obj)
    raise TorsorKitError("object of kind %r has no verifier" % files.kind_of(obj))


def _identity_decorated(t: TorsorPresentation) -> compose_mod.DecoratedTorsor:
    """Decorate with identity maps onto the computed side Hopf algebras."""
    sub_l = compute_side_hopf(t, "left")
    sub_r = compute_side_hopf(t, "right")
    ident = LinearMap.identity(t.field, t.dim)
    return compose_mod.DecoratedTorsor(
        t,
        hopf_iso(sub_l.hopf, sub_l.hopf, ident),
        hopf_iso(sub_r.hopf, sub_r.hopf, ident),
    )


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="torsorkit",
        description="Exact structure-constant toolkit for algebras, Hopf "
                    "algebras, torsors, and cotorsors.")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run the axiom suite for a file")
    v.add_argument("kind", choices=["algebra", "hopf", "torsor", "cotorsor", "twist"])
    v.add_argument("file")

    r = sub.add_parser("report", help="verify a file, kind taken from the file")
    r.add_argument("file")

    hs = sub.add_parser("hopf-side", help="compute a side Hopf algebra of a torsor")
    hs.add_argument("--side", choices=["left", "right"], required=True)
    hs.add_argument("torsor")
    hs.add_argument("-o", "--output")

    co = sub.add_parser("coactions", help="verify the two comodule-algebra structures")
    co.add_argument("torsor")

    cn = sub.add_parser("can", help="certify the canonical Galois map")
    cn.add_argument("--side", choices=["left", "right"], required=True)
    cn.add_argument("torsor")

    cp = sub.add_parser("compose", help="compose two torsors along a gluing matrix")
    cp.add_argument("t1")
    cp.add_argument("t2")
    cp.add_argument("--phi", required=True)
    cp.add_argument("-o", "--output")

    tor = sub.add_parser("tor", help="group operations on canonically decorated torsors")
    tor_sub = tor.add_subparsers(dest="tor_op", required=True)
    tu = tor_sub.add_parser("unit")
    tu.add_argument("hopf")
    tu.add_argument("-o", "--output")
    ti = tor_sub.add_parser("inverse")
    ti.add_argument("torsor")
    ti.add_argument("-o", "--output")
    tm = tor_sub.add_parser("multiply")
    tm.add_argument("t1")
    tm.add_argument("t2")
    tm.add_argument("-o", "--output")

    tw = sub.add_parser("twist", help="twist a Hopf algebra by a twist file")
    tw.add_argument("hopf")
    tw.add_argument("twist")
    tw.add_argument("-o", "--output")

    pa = sub.add_parser("parmentier", help="build the twist cotorsor of a Hopf algebra")
    pa.add_argument("hopf")
    pa.add_argument("twist")
    pa.add_argument("-o", "--output")

    du = sub.add_parser("dualize", help="transpose a torsor or cotorsor")
    du.add_argument("file")
    du.add_argument("-o", "--output")

    ga = sub.add_parser("gallery", help="list or build the registry and recipes")
    ga_sub = ga.add_subparsers(dest="gallery_op", required=True)
    ga_sub.add_parser("list")
    gb = ga_sub.add_parser("build")
    gb.add_argument("name")
    gb.add_argument("-o", "--output")
    return p


def _load_twist_with_host(host: HopfPresentation, twist_source: str) -> TwistData:
    loaded = files.load(twist_source)
    if not isinstance(loaded, TwistData):
        raise TorsorKitError("%r is not a twist file" % twist_source)
    if loaded.host.dim != host.dim or loaded.host.field != host.field:
        raise TorsorKitError("twist file dimension or field does not match the host")
    return build_twist(host, loaded.F, loaded.F_inv)


def run_command(argv, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return _dispatch(args, out, err)
    except VerificationFailure as exc:
        if exc.report is not None:
            _print_report(exc.report, out)
        print("error: %s" % exc, file=err)
        return 1
    except TorsorKitError as exc:
        print("error: %s: %s" % (type(exc).__name__, exc), file=err)
        return 2


def _dispatch(args, out, err) -> int:
    if args.command == "verify":
        obj = files.load(args.file)
        actual = files.kind_of(obj)
        if actual != args.kind:
            print("error: file has kind %r, expected %r" % (actual, args.kind),
                  file=err)
            return 2
        report = _verify_any(obj)
        _print_report(report, out)
        return 0 if report.ok else 1

    if args.command == "report":
        obj = files.load(args.file)
        report = _verify_any(obj)
        _print_report(report, out)
        return 0 if report.ok else 1

    if args.command == "hopf-side":
        t = files.load(args.torsor)
        if not isinstance(t, TorsorPresentation):
            print("error: %r is not a torsor" % args.torsor, file=err)
            return 2
        sub = compute_side_hopf(t, args.side)
        _print_report(sub.report, out)
        print("side %s: dimension %d, carrier fingerprint %s"
              % (args.side, sub.carrier.dim,
                 files.carrier_fingerprint(sub.carrier)), file=out)
        if args.output:
            files.save(sub.hopf, args.output,
                       {"side": args.side, "host": t.fingerprint(),
                        "carrier_fingerprint": files.carrier_fingerprint(sub.carrier)})
        return 0 if sub.report.ok else 1

    if args.command == "coactions":
        t = files.load(args.torsor)
        report = torsor_mod.verify_coactions(t)
        _print_report(report, out)
        return 0 if report.ok else 1

    if args.command == "can":
        t = files.load(args.torsor)
        result = torsor_mod.galois_can(t, args.side)
        _print_report(result.report, out)
        print("dimensions (T, H_l, H_r): %r" % (result.dims,), file=out)
        return 0 if result.report.ok else 1

    if args.command == "compose":
        t1 = files.load(args.t1)
        t2 = files.load(args.t2)
        phi_file = files.load(args.phi)
        if not isinstance(phi_file, files.PhiFile):
            print("error: %r is not a phi file" % args.phi, file=err)
            return 2
        sub_r1 = compute_side_hopf(t1, "right")
        sub_l2 = compute_side_hopf(t2, "left")
        src_fp = files.carrier_fingerprint(sub_r1.carrier)
        tgt_fp = files.carrier_fingerprint(sub_l2.carrier)
        if phi_file.source_fingerprint != src_fp:
            print("error: phi source fingerprint %s does not match computed %s"
                  % (phi_file.source_fingerprint, src_fp), file=err)
            return 2
        if phi_file.target_fingerprint != tgt_fp:
            print("error: phi target fingerprint %s does not match computed %s"
                  % (phi_file.target_fingerprint, tgt_fp), file=err)
            return 2
        phi = hopf_iso(sub_r1.hopf, sub_l2.hopf, phi_file.matrix)
        comp = compose_mod.compose_torsors(t1, t2, phi)
        report = verify_torsor(comp.torsor)
        _print_report(report, out)
        if args.output:
            files.save(comp.torsor, args.output,
                       {"composition": "%s * %s" % (t1.fingerprint(),
                                                    t2.fingerprint())})
        return 0 if report.ok else 1

    if args.command == "tor":
        return _dispatch_tor(args, out, err)

    if args.command in ("twist", "parmentier"):
        host = files.load(args.hopf)
        if not isinstance(host, HopfPresentation):
            print("error: %r is not a hopf file" % args.hopf, file=err)
            return 2
        tw = _load_twist_with_host(host, args.twist)
        report = verify_twist(tw)
        _print_report(report, out)
        if not report.ok:
            return 1
        if args.command == "twist":
            result = twist_hopf(tw)
            check = verify_hopf(result)
            _print_report(check, out)
            if args.output:
                files.save(result, args.output, {"twisted_from": host.fingerprint()})
            return 0 if check.ok else 1
        result = cotorsor_mod.parmentier_cotorsor(host, tw)
        _print_report(result.report, out)
        print("left side iso to dual(H): %s" % result.left_iso.verified, file=out)
        print("right side iso to dual(H_F): %s" % result.right_iso.verified, file=out)
        if args.output:
            files.save(result.cotorsor, args.output,
                       {"twist_cotorsor_of": host.fingerprint()})
        ok = result.report.ok and result.left_iso.verified and result.right_iso.verified
        return 0 if ok else 1

    if args.command == "dualize":
        obj = files.load(args.file)
        dual = cotorsor_mod.dualize(obj)
        report = _verify_any(dual)
        _print_report(report, out)
        if args.output:
            files.save(dual, args.output, {"dual_of": files.kind_of(obj)})
        return 0 if report.ok else 1

    if args.command == "gallery":
        if args.gallery_op == "list":
            for name in gallery_mod.registry_names():
                print(name, file=out)
            return 0
        t = gallery_mod.build_from_recipe(
            args.name,
            hopf_loader=lambda path: files.load(path),
            galois_loader=files.load_galois_recipe)
        report = verify_torsor(t)
        _print_report(report, out)
        if args.output:
            files.save(t, args.output, {"recipe": args.name})
        return 0 if report.ok else 1

    raise TorsorKitError("unhandled command %r" % (args.command,))


def _dispatch_tor(args, out, err) -> int:
    if args.tor_op == "unit":
        h = files.load(args.hopf)
        if not isinstance(h, HopfPresentation):
            print("error: %r is not a hopf file" % args.hopf, file=err)
            return 2
        d = compose_mod.tor_unit(h)
        report = verify_torsor(d.torsor)
        _print_report(report, out)
        if args.output:
            files.save(d.torsor, args.output,
                       {"decorations": "counit contractions onto the host"})
        return 0 if report.ok else 1

    if args.tor_op == "inverse":
        t = files.load(args.torsor)
        d = compose_mod.tor_inverse(_identity_decorated(t))
        report = verify_torsor(d.torsor)
        _print_report(report, out)
        if args.output:
            files.save(d.torsor, args.output,
                       {"decorations": "transported identity decorations"})
        return 0 if report.ok else 1

    if args.tor_op == "multiply":
        t1 = files.load(args.t1)
        t2 = files.load(args.t2)
        d1 = _identity_decorated(t1)
        d2 = _identity_decorated(t2)
        try:
            d, comp, isos = compose_mod.tor_multiply(d1, d2)
        except ReferenceHopfMismatch as exc:
            print("error: ReferenceHopfMismatch: %s" % exc, file=err)
            return 2
        report = verify_torsor(d.torsor)
        _print_report(report, out)
        _print_report(isos.report, out)
        if args.output:
            files.save(d.torsor, args.output,
                       {"composition": "%s * %s" % (t1.fingerprint(),
                                                    t2.fingerprint())})
        return 0 if report.ok and isos.report.ok else 1

    raise TorsorKitError("unhandled tor operation %r" % (args.tor_op,))


def main(argv=None) -> int:
    return run_command(argv if argv is not None else sys.argv[1:])


if __name__ == "__main__":
    sys.exit(main())
