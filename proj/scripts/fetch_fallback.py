"""Rebuilds missing datasets in UCI raw format from offline sources.

zoo.data     Orange3 wheel, Orange/datasets/zoo.tab
digits.data  mvlearn wheel, mvlearn/datasets/UCImultifeature/mfeat-pix.csv
             (240 pixel columns followed by the digit)
car_features.data
             the full 4x4x4x3x3x3 attribute grid of the Car data set, which is
             exactly the set of its 1728 rows; class labels are not available
"""

import csv
import io
import itertools
import subprocess
import sys
import tempfile
import zipfile
from pathlib import Path

ZOO_CLASSES = ["mammal", "bird", "reptile", "fish", "amphibian", "insect", "invertebrate"]


def wheel(package, cache):
    found = sorted(cache.glob(package.replace("-", "_") + "-*.whl")) + sorted(
        cache.glob(package + "-*.whl")
    )
    if not found:
        subprocess.run(
            [sys.executable, "-m", "pip", "download", "--no-deps", "-q", "-d", str(cache), package],
            check=True,
        )
        found = sorted(cache.glob(package.replace("-", "_") + "-*.whl")) + sorted(
            cache.glob(package + "-*.whl")
        )
    return zipfile.ZipFile(found[-1])


def zoo(out, cache):
    text = wheel("orange3", cache).read("Orange/datasets/zoo.tab").decode()
    rows = text.splitlines()[3:]
    with open(out, "w") as f:
        for line in rows:
            if not line.strip():
                continue
            cells = line.split("\t")
            name, attrs, cls = cells[0], cells[1:-1], cells[-1]
            f.write(",".join([name, *attrs, str(ZOO_CLASSES.index(cls) + 1)]) + "\n")


def digits(out, cache):
    z = wheel("mvlearn", cache)
    text = z.read("mvlearn/datasets/UCImultifeature/mfeat-pix.csv").decode()
    reader = csv.reader(io.StringIO(text))
    next(reader)
    with open(out, "w") as f:
        for row in reader:
            values = [str(int(float(v))) for v in row[:240]]
            f.write(" ".join(values) + f" {int(float(row[240]))}\n")


def car_features(out):
    levels = [
        ["vhigh", "high", "med", "low"],
        ["vhigh", "high", "med", "low"],
        ["2", "3", "4", "5more"],
        ["2", "4", "more"],
        ["small", "med", "big"],
        ["low", "med", "high"],
    ]
    with open(out, "w") as f:
        for combo in itertools.product(*levels):
            f.write(",".join(combo) + "\n")


def main():
    data = Path(sys.argv[1] if len(sys.argv) > 1 else Path(__file__).parent.parent / "data")
    data.mkdir(parents=True, exist_ok=True)
    with tempfile.TemporaryDirectory() as tmp:
        cache = Path(tmp)
        for name, build in [("zoo.data", zoo), ("digits.data", digits)]:
            if not (data / name).exists():
                try:
                    build(data / name, cache)
                    print(f"rebuilt {name}")
                except Exception as e:  # noqa: BLE001
                    print(f"could not rebuild {name}: {e}", file=sys.stderr)
    if not (data / "car.data").exists() and not (data / "car_features.data").exists():
        car_features(data / "car_features.data")
        print("generated car_features.data (no class labels)")
    for name in ["spect.data", "soybean.data"]:
        if not (data / name).exists():
            print(f"{name} unavailable offline; it is not needed by the acceptance suite")


if __name__ == "__main__":
    main()
