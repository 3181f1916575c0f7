#!/usr/bin/env python3
"""
Verification runner
Runs every suite with the configured seed and writes JSON reports.
"""

import sys
from pathlib import Path

# Add the project root to the Python path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))


def main(seed=None, out_dir="reports", timings=False):
    """Run each suite, print a summary, write reports/<suite>.json"""

    print("🚀 Skein algebra verification")
    print("=" * 50)

    try:
        # 1. Configuration
        print("1️⃣ Loading configuration...")
        from src.algebra import coeff
        from src.utils.config import Config

        config = Config()
        coeff.configure(**config.coeff_settings().model_dump())
        seed = config.seed if seed is None else int(seed)
        limits = config.suite_limits()
        print(f"✅ {config.config_path}")
        print(f"   seed: {seed}, workers: {config.workers}")

        # 2. Suites
        print("\n2️⃣ Running suites...")
        from src.verification.suites import SUITE_NAMES, report_json, run_suite

        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        failed = []
        for name in SUITE_NAMES:
            report = run_suite(
                name, seed=seed, limits=limits, workers=config.workers, include_timings=timings
            )
            (out / f"{name}.json").write_text(report_json(report) + "\n")
            cases = sum(c.cases for c in report.checks)
            if report.passed:
                print(f"✅ {name}: {len(report.checks)} checks, {cases} cases")
            else:
                failed.append(name)
                print(f"❌ {name}")
                for c in report.checks:
                    if not c.passed:
                        print(f"   {c.name}: {c.detail}")

        # 3. Summary
        print("\n3️⃣ Summary...")
        if failed:
            print(f"❌ failing suites: {', '.join(failed)}")
            return False
        print(f"🎉 all suites pass; reports in {out}/")
        return True

    except Exception as e:
        print(f"❌ verification aborted: {e}")
        import traceback

        traceback.print_exc()
        return False


if __name__ == "__main__":
    import fire

    sys.exit(0 if fire.Fire(main) else 1)
