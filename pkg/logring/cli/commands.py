"""Command handlers. Each returns the process exit status."""
import argparse
import logging
import sys
from typing import List

from pydantic import BaseModel

from logring.cli.expressions import InputError, parse_log_class
from logring.config.settings import settings
from logring.data.presets import COMPLETE_SMOOTH_FANS, constant_free_bases, preset_fan, preset_snc_specs
from logring.models.io_models import (
    AgreementEntry,
    CertificateReport,
    ChiYReport,
    ClassParts,
    ClassReport,
    ExpressionFile,
    FanFile,
    FanSummary,
    HodgeReport,
    InvariantsReport,
    P1PresetReport,
    ResidueReport,
    SncFile,
    SncSummary,
    StratumEntry,
    SubdivideReport,
    TbarReport,
)
from logring.services.fan_toolkit import (
    Fan,
    chi_c_fan,
    is_complete,
    is_smooth,
    stellar_subdivide,
    stratification_class,
    toric_class,
)
from logring.services.hodge_oracle import (
    P1_CONSTANT_FREE_RANKS,
    P1_PRESETS,
    ConstantFreeSpec,
    counterexample_certificate,
    ebar_of,
    elog_constant_free,
    elog_p1,
    elog_smooth_proper_toric,
    log_serre_duality,
)
from logring.services.log_ring import EBarPair, LogClass, b_of, chi_log, rho, t_of, tau, tbar_of
from logring.services.motive_ring import RealizationError, SymbolTable, e_of
from logring.services.snc_calculator import (
    SncSpec,
    chi_y_bridge,
    residue_recursion,
    rho_expansion,
    snc_class,
    stratum_key,
)
from logring.services.verification import run_suite
from logring.utils.loaders import (
    detect_input_kind,
    expression_from_model,
    fan_from_model,
    fan_to_model,
    load_fan,
    load_json,
    snc_from_model,
    write_fan,
)

logger = logging.getLogger(__name__)


def emit(report: BaseModel, as_json: bool, text_lines: List[str]) -> None:
    if as_json:
        print(report.model_dump_json(indent=settings.output.json_indent, by_alias=True))
    else:
        print("\n".join(text_lines))


def _tbar(pair: EBarPair) -> TbarReport:
    return TbarReport(first=str(pair.first), second=str(pair.second))


def build_class_report(x: LogClass) -> ClassReport:
    invariants = InvariantsReport(tau=str(tau(x)), rho=str(rho(x)))
    notes: List[str] = []
    try:
        invariants.chi_log = chi_log(x)
        invariants.e_tau = str(e_of(tau(x)))
    except RealizationError as exc:
        notes.append(str(exc))
    try:
        invariants.t = str(t_of(x))
        invariants.tbar = _tbar(tbar_of(x))
        invariants.b = str(b_of(x))
    except RealizationError as exc:
        notes.append(str(exc))
    return ClassReport(
        class_=ClassParts(scalar=str(x.scalar_part), p_part=str(x.p_part)),
        normal_form=str(x),
        invariants=invariants,
        notes=notes,
    )


def summarize_fan(fan: Fan, table: SymbolTable) -> FanSummary:
    unreduced, reduced = stratification_class(fan, table)
    return FanSummary(
        ambient_dim=fan.ambient_dim,
        rays=[list(r) for r in fan.rays],
        maximal_cones=[sorted(c) for c in fan.maximal_cones()],
        cone_count=len(fan.cones),
        smooth=is_smooth(fan),
        chi_c=chi_c_fan(fan),
        completeness=is_complete(fan).value,
        partially_validated=fan.partially_validated,
        stratification=str(unreduced),
        stratification_reduced=str(reduced),
    )


def summarize_snc(spec: SncSpec) -> SncSummary:
    x = snc_class(spec)
    expansion = rho_expansion(spec)
    chi_y = None
    try:
        bridge = chi_y_bridge(spec)
        chi_y = ChiYReport(lhs=str(bridge.lhs), rhs=str(bridge.rhs), equal=bridge.equal)
    except RealizationError as exc:
        logger.info("chi_y bridge skipped: %s", exc)
    residues = []
    for component in spec.components:
        result = residue_recursion(spec, component)
        residues.append(
            ResidueReport(
                component=component,
                lhs=str(result.lhs),
                rhs=str(result.rhs),
                holds=result.holds,
                component_identity=result.component_identity,
                complement_identity=result.complement_identity,
            )
        )
    return SncSummary(
        dim=spec.dimension,
        components=list(spec.components),
        open_strata=[StratumEntry(key=stratum_key(k), value=str(v)) for k, v in spec.items()],
        rho_expansion=str(expansion),
        rho_matches=expansion == rho(x),
        chi_y=chi_y,
        residues=residues,
    )


def _class_lines(report: ClassReport) -> List[str]:
    inv = report.invariants
    lines = [f"class: {report.normal_form}", f"tau: {inv.tau}", f"rho: {inv.rho}"]
    if inv.chi_log is not None:
        lines += [f"chi_log: {inv.chi_log}", f"e(tau): {inv.e_tau}"]
    if inv.tbar is not None:
        lines += [f"t: {inv.t}", f"tbar: ({inv.tbar.first}, {inv.tbar.second})", f"b: {inv.b}"]
    if report.fan is not None:
        fan = report.fan
        lines += [
            f"fan: dim {fan.ambient_dim}, {len(fan.rays)} rays, {fan.cone_count} cones, "
            f"smooth {fan.smooth}, {fan.completeness}",
            f"chi_c: {fan.chi_c}",
            f"stratification: {fan.stratification}",
        ]
        if fan.partially_validated:
            lines.append("warning: non-simplicial fan, cone intersections not validated")
    if report.snc is not None:
        lines += _snc_lines(report.snc)
    lines += [f"note: {n}" for n in report.notes]
    return lines


def _snc_lines(summary: SncSummary) -> List[str]:
    lines = [f"strata ({summary.dim}-dimensional, components {', '.join(summary.components) or 'none'}):"]
    lines += [f"  [{entry.key}] {entry.value}" for entry in summary.open_strata]
    lines.append(f"rho expansion: {summary.rho_expansion} (matches rho: {summary.rho_matches})")
    if summary.chi_y is not None:
        lines.append(f"chi_y bridge: {summary.chi_y.lhs} vs {summary.chi_y.rhs} (equal: {summary.chi_y.equal})")
    for r in summary.residues:
        lines.append(f"residue at {r.component}: {r.lhs} = {r.rhs} ({'holds' if r.holds else 'fails'})")
    return lines


def cmd_class(args: argparse.Namespace) -> int:
    table = SymbolTable()
    fan_summary = snc_summary = None
    if args.expr is not None:
        x = parse_log_class(args.expr, table)
    elif args.preset is not None:
        fan = preset_fan(args.preset)
        x = toric_class(fan, table)
        fan_summary = summarize_fan(fan, table)
    elif args.input is not None:
        data = load_json(args.input)
        kind = detect_input_kind(data)
        if kind == "fan":
            fan = fan_from_model(FanFile.model_validate(data))
            x = toric_class(fan, table)
            fan_summary = summarize_fan(fan, table)
        elif kind == "snc":
            spec = snc_from_model(SncFile.model_validate(data), table, source=args.input)
            x = snc_class(spec)
            snc_summary = summarize_snc(spec)
        else:
            x = expression_from_model(ExpressionFile.model_validate(data), table, source=args.input)
    else:
        raise InputError("class needs one of --expr, --input or --preset")

    report = build_class_report(x)
    report.fan = fan_summary
    report.snc = snc_summary
    emit(report, args.json, _class_lines(report))
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    config = settings.verify
    if args.seed is not None:
        config = config.model_copy(update={"seed": args.seed})
    report = run_suite(args.suite, config)
    lines = [f"[{'PASS' if r.passed else 'FAIL'}] {r.suite}: {r.name} ({r.detail})" for r in report.results]
    lines.append(f"{report.total - report.failed}/{report.total} checks passed")
    emit(report, args.json, lines)
    return 0 if report.passed else 1


def parse_ray(text: str) -> List[int]:
    try:
        return [int(part) for part in text.split(",")]
    except ValueError:
        raise InputError(f"ray must be comma-separated integers, got '{text}'") from None


def cmd_subdivide(args: argparse.Namespace) -> int:
    if args.input is None or args.ray is None:
        raise InputError("subdivide needs --input and --ray")
    table = SymbolTable()
    fan = load_fan(args.input)
    ray = parse_ray(args.ray)
    refined = stellar_subdivide(fan, ray)
    before, after = toric_class(fan, table), toric_class(refined, table)
    report = SubdivideReport(
        ray=ray,
        before=str(before),
        after=str(after),
        classes_equal=before == after,
        chi_c_before=chi_c_fan(fan),
        chi_c_after=chi_c_fan(refined),
        stratification_after=str(stratification_class(refined, table)[0]),
        fan=fan_to_model(refined),
    )
    if args.output:
        write_fan(args.output, refined, indent=settings.output.json_indent)
    lines = [
        f"subdivided at {ray}: {len(refined.maximal_cones())} maximal cones",
        f"maximal cones: {[sorted(c) for c in refined.maximal_cones()]}",
        f"class before: {before}",
        f"class after:  {after}",
        f"stratification after: {report.stratification_after}",
        f"classes equal: {report.classes_equal}",
    ]
    if not args.output:
        lines.append(report.fan.model_dump_json())
    emit(report, args.json, lines)
    if not report.classes_equal:
        logger.error("class changed under subdivision: %s -> %s", before, after)
        return 1
    return 0


def build_hodge_report() -> HodgeReport:
    table = SymbolTable()
    P = LogClass.log_point(table)
    presets = []
    for name, bundle in P1_PRESETS.items():
        hodge_table, e = elog_p1(bundle)
        presets.append(
            P1PresetReport(
                name=name,
                degrees=list(bundle.degrees),
                rows=hodge_table.rows(),
                euler_characteristics=hodge_table.euler_characteristics(),
                e_log=str(e),
                ebar=_tbar(ebar_of(e)),
                log_serre_duality=(
                    log_serre_duality(e, P1_CONSTANT_FREE_RANKS[name], 1) if name in P1_CONSTANT_FREE_RANKS else None
                ),
            )
        )
    cert = counterexample_certificate()
    certificate = CertificateReport(
        difference=str(cert.difference),
        witness=list(cert.witness),
        witness_coefficient=cert.witness_coefficient,
        log_reduction=str(cert.log_reduction),
        trivial_reduction=str(cert.trivial_reduction),
    )
    constant_free = []
    for label, base, dim in constant_free_bases(table):
        for r in range(4):
            oracle = ebar_of(elog_constant_free(ConstantFreeSpec(e_of(base), r, dim)))
            ring = tbar_of(LogClass(base) * P ** r)
            constant_free.append(
                AgreementEntry(label=f"{label} rank {r}", oracle=_tbar(oracle), ring=_tbar(ring), agree=oracle == ring)
            )
    toric = []
    for name in COMPLETE_SMOOTH_FANS:
        fan = preset_fan(name)
        oracle = ebar_of(elog_smooth_proper_toric(fan.ambient_dim))
        ring = tbar_of(toric_class(fan, table))
        toric.append(AgreementEntry(label=name, oracle=_tbar(oracle), ring=_tbar(ring), agree=oracle == ring))
    return HodgeReport(p1_presets=presets, certificate=certificate, constant_free=constant_free, toric=toric)


def cmd_hodge(args: argparse.Namespace) -> int:
    report = build_hodge_report()
    lines = []
    for preset in report.p1_presets:
        lines.append(f"P1 {preset.name} {preset.degrees}: E^log = {preset.e_log}, rows {preset.rows}")
    cert = report.certificate
    p, q = cert.witness
    lines.append(f"certificate: {cert.difference}, odd coefficient {cert.witness_coefficient} at u^{p} v^{q}")
    lines.append(f"v = -1 reductions: {cert.log_reduction} and {cert.trivial_reduction}")
    for entry in report.constant_free + report.toric:
        verdict = "agree" if entry.agree else "DIFFER"
        lines.append(f"{entry.label}: oracle {entry.oracle.first} / ring {entry.ring.first} ({verdict})")
    emit(report, args.json, lines)
    agree = all(e.agree for e in report.constant_free + report.toric)
    return 0 if agree else 1


def cmd_snc(args: argparse.Namespace) -> int:
    table = SymbolTable()
    if args.preset is not None:
        specs = preset_snc_specs(table)
        if args.preset not in specs:
            raise InputError(f"unknown s.n.c. preset '{args.preset}'; choose from {sorted(specs)}")
        spec = specs[args.preset]
    elif args.input is not None:
        spec = snc_from_model(SncFile.model_validate(load_json(args.input)), table, source=args.input)
    else:
        raise InputError("snc needs --input or --preset")
    report = build_class_report(snc_class(spec))
    report.snc = summarize_snc(spec)
    emit(report, args.json, _class_lines(report))
    summary = report.snc
    ok = summary.rho_matches and all(r.holds for r in summary.residues)
    if summary.chi_y is not None:
        ok = ok and summary.chi_y.equal
    return 0 if ok else 1


def fail(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return 2
