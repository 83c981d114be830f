"""Build hook: compiles the C++ extension with CMake and places it in the package."""

import os
import shutil
import subprocess
import sys
from pathlib import Path

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class CMakeExtension(Extension):
    def __init__(self, name: str) -> None:
        super().__init__(name, sources=[])


class CMakeBuild(build_ext):
    def build_extension(self, ext: CMakeExtension) -> None:
        source_dir = Path(__file__).resolve().parent
        build_dir = Path(self.build_temp) / "cmake"
        build_dir.mkdir(parents=True, exist_ok=True)

        configure = [
            "cmake",
            "-S",
            str(source_dir),
            "-B",
            str(build_dir),
            f"-DPython3_EXECUTABLE={sys.executable}",
            "-DCMAKE_BUILD_TYPE=Release",
            "-DSPCSIM_BUILD_TESTING=OFF",
        ]
        subprocess.run(configure, check=True)
        subprocess.run(
            ["cmake", "--build", str(build_dir), "--target", "_core", "-j"], check=True
        )

        built = sorted((build_dir / "python" / "spcsim").glob("_core*"))
        if not built:
            raise RuntimeError("CMake build produced no _core extension module")
        dest = Path(self.get_ext_fullpath(ext.name))
        dest.parent.mkdir(parents=True, exist_ok=True)
        shutil.copy2(built[-1], dest)


setup(
    packages=["spcsim"],
    package_dir={"spcsim": "python/spcsim"},
    ext_modules=[CMakeExtension("spcsim._core")],
    cmdclass={"build_ext": CMakeBuild},
    zip_safe=False,
)
