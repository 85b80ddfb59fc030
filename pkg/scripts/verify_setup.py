"""Verify the environment before running scenarios."""

import os
import sys
from pathlib import Path
from dotenv import load_dotenv

# Load .env
load_dotenv(Path(__file__).parent.parent / '.env')

ROOT = Path(__file__).parent.parent

def check_env_var(name: str, default: str) -> tuple[bool, str]:
    """Check that an override, if present, parses as a number."""
    value = os.getenv(name)
    if not value:
        return True, f"⚠️  {name} not set, using {default}"
    try:
        float(value)
    except ValueError:
        return False, f"❌ {name} = {value} is not a number"
    return True, f"✅ {name} = {value}"

def main():
    """Verify setup."""
    print("🔍 Verifying Tatonnement Lab Setup")
    print("=" * 60)

    all_ok = True

    # Numerical overrides
    print("\n📋 Environment Variables:")
    print("-" * 60)

    numeric_vars = [
        ("WALRAS_TOL", "1e-10"),
        ("HOMOGENEITY_TOL", "1e-8"),
        ("FD_RELATIVE_STEP", "1e-5"),
        ("EQUILIBRIUM_TOL", "1e-12"),
        ("CYCLE_TOL", "1e-9"),
        ("SWEEP_WORKERS", "1"),
    ]

    for var_name, default in numeric_vars:
        ok, message = check_env_var(var_name, default)
        print(f"  {message}")
        if not ok:
            all_ok = False

    # Check Python packages
    print("\n📦 Python Packages:")
    print("-" * 60)

    required_packages = [
        "numpy",
        "scipy",
        "pandas",
        "pydantic",
        "dotenv",
        "pytest",
        "hypothesis",
    ]

    for package in required_packages:
        try:
            __import__(package)
            print(f"  ✅ {package} installed")
        except ImportError:
            print(f"  ❌ {package} NOT installed")
            all_ok = False

    # Check bundled presets load
    print("\n📁 Bundled Economies:")
    print("-" * 60)
    sys.path.insert(0, str(ROOT))
    try:
        from economy.repository import EconomyRepository
        from economy.properties import check_walras
        from economy.economies import random_price
        import numpy as np

        rng = np.random.default_rng(0)
        for path in sorted((ROOT / "presets" / "economies").glob("*.json")):
            economy = EconomyRepository.load(path)
            walras = all(check_walras(economy, random_price(economy.n_commodities, rng)) for _ in range(10))
            mark = "✅" if walras else "⚠️ "
            print(f"  {mark} {path.name}: {economy.n_commodities} goods, Walras {'ok' if walras else 'violated'}")
    except Exception as e:
        print(f"  ❌ Could not load presets: {e}")
        all_ok = False

    # Summary
    print("\n" + "=" * 60)
    if all_ok:
        print("✅ All checks passed! You're ready to run scenarios.")
        print("\n📖 Next steps:")
        print("   1. Verify an economy: python -m cli.main verify --config presets/scenarios/cobb-douglas-2good.json")
        print("   2. Simulate:          python -m cli.main simulate --config presets/scenarios/cobb-douglas-2good.json")
        print("   3. Run the tests:     pytest")
        return 0
    else:
        print("❌ Some checks failed. Please fix the issues above.")
        return 1

if __name__ == "__main__":
    sys.exit(main())
