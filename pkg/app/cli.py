"""svp-vqe 命令行入口"""
import argparse
import asyncio
import json
import logging
import sys
from pathlib import Path
from typing import List, Optional

from pydantic import ValidationError

from app.errors import ParameterError, SvpError

logger = logging.getLogger("cli")

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


def _int_list(text: str) -> List[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"需要逗号分隔的整数: {text!r}") from e


def _float_list(text: str) -> List[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"需要逗号分隔的数值: {text!r}") from e


def _budget_list(text: str) -> List[Optional[int]]:
    """逗号分隔的比特预算，n 表示每个系数 1 个比特"""
    try:
        return [None if v.strip() == "n" else int(v) for v in text.split(",") if v.strip()]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"需要逗号分隔的整数或 n: {text!r}") from e


def _str_list(text: str) -> List[str]:
    return [v.strip() for v in text.split(",") if v.strip()]


def load_config(args):
    from app.harness import ExperimentConfig

    config = ExperimentConfig.load(args.config) if args.config else ExperimentConfig()
    return config.merged(seed=args.seed, out_dir=args.out_dir, jobs=args.jobs)


def _emit(text: str, output: Optional[str]) -> None:
    if output:
        path = Path(output)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
        logger.info(f"已写入 {path}")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _mapping_fields(args, B) -> dict:
    return {"rows": B.to_lists(), "A": args.A, "strategy": args.strategy, "qubits": args.qubits, "seed": args.seed or 0}


def cmd_gen(args) -> int:
    from app.lattice import format_basis, prepare_instance, sample_qary

    seed = args.seed or 0
    if args.n is None:
        B = sample_qary(args.d, args.k, args.q, seed)
    else:
        B = prepare_instance(args.d, args.k, args.q, args.n, seed)
    _emit(format_basis(B), args.output)
    return 0


def cmd_reduce(args) -> int:
    from app.lattice import Basis, format_basis, read_basis
    from app.service import ReduceRequest, reduce_lattice

    B = read_basis(args.input)
    res = reduce_lattice(ReduceRequest(rows=B.to_lists(), method=args.method, beta=args.beta, delta=args.delta))
    logger.info(f"{args.method}: log2 正交缺陷 {res.log2_defect:.3f}, 预言机调用 {res.oracle_calls} 次")
    _emit(format_basis(Basis.from_rows(res.rows)), args.output)
    return 0


def cmd_bounds(args) -> int:
    from app.lattice import read_basis
    from app.service import MappingInput, lattice_bounds

    B = read_basis(args.input)
    res = lattice_bounds(MappingInput(**_mapping_fields(args, B)))
    _emit(res.model_dump_json(exclude_none=True), args.output)
    return 0


def cmd_qubo(args) -> int:
    from app.lattice import read_basis
    from app.service import HamiltonianRequest, build_hamiltonian

    B = read_basis(args.input)
    P = None if args.P == "auto" else _positive_int(args.P)
    res = build_hamiltonian(
        HamiltonianRequest(**_mapping_fields(args, B), penalty=args.penalty, P=P, ising=args.ising)
    )
    logger.info(f"{res.kind}: {res.n_vars} 个变量")
    _emit(json.dumps(res.document, ensure_ascii=False, indent=2), args.output)
    return 0


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError as e:
        raise ParameterError(f"惩罚系数必须是正整数或 auto: {text!r}") from e
    if value <= 0:
        raise ParameterError(f"惩罚系数必须为正: {value}")
    return value


def cmd_vqe(args) -> int:
    from app.encoding import IsingHamiltonian, load_hamiltonian, qubo_to_ising
    from app.harness import append_csv, hamiltonian_for
    from app.harness.experiments import RUN_FIELDS
    from app.lattice import read_basis
    from app.vqe import run_vqe

    config = load_config(args)
    config = config.merged(
        alpha=args.alpha,
        cost_variant=args.variant,
        shots=args.shots,
        layers=args.layers,
        evaluation=args.evaluation,
        samples=args.final_shots,
    )
    B = read_basis(args.input)
    if args.hamiltonian:
        try:
            text = Path(args.hamiltonian).read_text(encoding="utf-8")
        except OSError as e:
            raise ParameterError(f"无法读取哈密顿量文件: {e}") from e
        problem, enc = load_hamiltonian(text)
        H = problem if isinstance(problem, IsingHamiltonian) else qubo_to_ising(problem)
    else:
        enc, H = hamiltonian_for(B, config, config.seed)
    result = run_vqe(
        B,
        enc,
        H,
        config.ansatz(enc.n_bits),
        config.cost_mode(),
        config.optimizer,
        seed=config.seed,
        final_shots=config.samples,
    )
    record = result.model_dump_json(indent=2)
    _emit(record, args.output)
    append_csv(Path(config.out_dir) / "vqe_runs.csv", RUN_FIELDS, {"label": "vqe", **result.csv_row()})
    return 0


def _experiment_config(args):
    config = load_config(args)
    return config.merged(
        ranks=getattr(args, "ranks", None),
        count=getattr(args, "count", None),
        budgets=getattr(args, "budgets", None),
        strategies=getattr(args, "strategies", None),
        reductions=getattr(args, "reductions", None),
        repeats=getattr(args, "repeats", None),
        timeout=getattr(args, "timeout", None),
        alphas=getattr(args, "alphas", None),
        alpha=getattr(args, "alpha", None),
        shots=getattr(args, "shots", None),
        layers=getattr(args, "layers", None),
        evaluation=getattr(args, "evaluation", None),
        cost_variant=getattr(args, "variant", None),
    )


def cmd_inclusion(args) -> int:
    from app.harness import run_inclusion_table

    out = run_inclusion_table(_experiment_config(args))
    print(out.csv_path)
    return 0


def cmd_scaling(args) -> int:
    from app.harness import run_qubit_scaling

    out = run_qubit_scaling(_experiment_config(args))
    print(out.csv_path)
    return 0


def cmd_cvar_sweep(args) -> int:
    from app.harness import run_cvar_sweep

    out = run_cvar_sweep(_experiment_config(args))
    print(out.csv_path)
    return 0


def cmd_campaign(args) -> int:
    from app.harness import run_vqe_campaign

    out = run_vqe_campaign(_experiment_config(args))
    print(out.csv_path)
    return 0


def cmd_api(args) -> int:
    """运行FastAPI服务器"""
    import uvicorn

    logger.info(f"启动API服务器 - 地址: {args.host}, 端口: {args.port}")
    uvicorn.run("app.api:app", host=args.host, port=args.port, reload=args.reload)
    return 0


def cmd_mcp(args) -> int:
    """运行MCP服务器"""
    from app.mcp_server import LatticeMCPServer

    logger.info(f"启动MCP服务器 (模式: {args.transport}, 端口: {args.port})")
    server = LatticeMCPServer()
    try:
        asyncio.run(server.run(transport=args.transport, host=args.host, port=args.port))
    except KeyboardInterrupt:
        logger.info("MCP服务器已停止")
    return 0


def _add_vqe_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--alpha", type=float, help="CVaR 的 α")
    p.add_argument(
        "--variant",
        choices=["mean", "cvar", "zero-excluded-mean", "zero-excluded-cvar"],
        help="代价函数变体",
    )
    p.add_argument("--shots", type=int, help="每次代价评估的测量次数")
    p.add_argument("--layers", type=int, help="拟设层数")
    p.add_argument("--evaluation", choices=["sampled", "exact"], help="代价评估方式")


def _add_mapping_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--input", required=True, help="格基文件")
    p.add_argument("--A", default="gh", help="半径: 数值、gh 或 1.05gh 形式")
    p.add_argument(
        "--strategy",
        default="dual-lemma",
        choices=["dual-lemma", "uniform", "uniform-random", "dual-scaled"],
        help="系数界来源",
    )
    p.add_argument("--qubits", type=int, help="朴素映射的比特预算")
    p.add_argument("--output", help="输出文件 (缺省为标准输出)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="svp-vqe", description="基于 VQE 的最短向量问题实验工具")
    parser.add_argument("--config", help="JSON 实验配置文件")
    parser.add_argument("--seed", type=int, help="主随机种子")
    parser.add_argument("--out-dir", dest="out_dir", help="结果目录")
    parser.add_argument("--jobs", type=int, help="并行进程数")
    parser.add_argument("-v", "--verbose", action="store_true", help="输出调试日志")
    parser.add_argument("-q", "--quiet", action="store_true", help="只输出警告与错误")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="生成 q-ary 格基")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--q", type=int, default=65537)
    p.add_argument("--n", type=int, help="LLL 后取前 n 行")
    p.add_argument("--output", help="输出文件 (缺省为标准输出)")
    p.set_defaults(handler=cmd_gen)

    p = sub.add_parser("reduce", help="格基约化")
    p.add_argument("--input", required=True)
    p.add_argument("--method", default="lll", choices=["lll", "bkz", "hkz", "pseudo-hkz", "dual-hkz"])
    p.add_argument("--beta", type=int, default=10)
    p.add_argument("--delta", type=float, default=0.99)
    p.add_argument("--output")
    p.set_defaults(handler=cmd_reduce)

    p = sub.add_parser("bounds", help="系数界与量子比特数")
    _add_mapping_flags(p)
    p.set_defaults(handler=cmd_bounds)

    p = sub.add_parser("qubo", help="构造 QUBO / Ising 哈密顿量")
    _add_mapping_flags(p)
    p.add_argument("--penalty", action="store_true", help="使用零向量惩罚编码")
    p.add_argument("--P", default="auto", help="惩罚系数 (正整数或 auto)")
    p.add_argument("--ising", action="store_true", help="输出 Ising 形式")
    p.set_defaults(handler=cmd_qubo)

    p = sub.add_parser("vqe", help="对单个格运行 VQE")
    p.add_argument("--input", required=True, help="格基文件")
    p.add_argument("--hamiltonian", help="哈密顿量交换文件 (缺省按配置构造)")
    p.add_argument("--final-shots", dest="final_shots", type=int, help="最终采样次数")
    p.add_argument("--output", help="JSON 结果文件 (缺省为标准输出)")
    _add_vqe_flags(p)
    p.set_defaults(handler=cmd_vqe)

    p = sub.add_parser("inclusion", help="包含概率表")
    p.add_argument("--ranks", type=_int_list)
    p.add_argument("--count", type=int)
    p.add_argument("--budgets", type=_budget_list, help="比特预算列表，n 表示每个系数 1 个比特")
    p.add_argument("--strategies", type=_str_list)
    p.set_defaults(handler=cmd_inclusion)

    p = sub.add_parser("scaling", help="对偶约化后的量子比特数缩放")
    p.add_argument("--ranks", type=_int_list)
    p.add_argument("--reductions", type=_str_list, help="lll, bkz-20, pseudo-hkz ...")
    p.add_argument("--repeats", type=int)
    p.add_argument("--timeout", type=float, help="每个实例的约化时限 (秒)")
    p.set_defaults(handler=cmd_scaling)

    p = sub.add_parser("cvar-sweep", help="CVaR α 扫描")
    p.add_argument("--ranks", type=_int_list)
    p.add_argument("--count", type=int)
    p.add_argument("--alphas", type=_float_list)
    _add_vqe_flags(p)
    p.set_defaults(handler=cmd_cvar_sweep)

    p = sub.add_parser("campaign", help="各秩上的 VQE 求解实验")
    p.add_argument("--ranks", type=_int_list)
    p.add_argument("--count", type=int)
    _add_vqe_flags(p)
    p.set_defaults(handler=cmd_campaign)

    p = sub.add_parser("api", help="运行 HTTP API 服务器")
    p.add_argument("--host", default="0.0.0.0")
    p.add_argument("--port", type=int, default=8080)
    p.add_argument("--reload", action="store_true", help="是否启用热重载")
    p.set_defaults(handler=cmd_api)

    p = sub.add_parser("mcp", help="运行 MCP 服务器")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8001)
    p.add_argument("--transport", default="sse", choices=["sse", "stdio"])
    p.set_defaults(handler=cmd_mcp)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    level = logging.DEBUG if args.verbose else logging.WARNING if args.quiet else logging.INFO
    logging.basicConfig(level=level, format=LOG_FORMAT)
    logging.getLogger().setLevel(level)
    try:
        return args.handler(args)
    except ValidationError as e:
        logger.error(f"参数不合法: {e}")
        return ParameterError.exit_code
    except SvpError as e:
        logger.error(f"{type(e).__name__}: {e}")
        return e.exit_code


if __name__ == "__main__":
    sys.exit(main())
