import shutil
import subprocess
import sys
from pathlib import Path

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class CMakeExtension(Extension):
    def __init__(self, name):
        super().__init__(name, sources=[])


class CMakeBuild(build_ext):
    # Configure the regular CMake tree and build only the extension target,
    # then drop the shared object where setuptools expects it.
    def build_extension(self, ext):
        source = Path(__file__).resolve().parent
        build = Path(self.build_temp).resolve()
        build.mkdir(parents=True, exist_ok=True)
        config = "Debug" if self.debug else "Release"
        subprocess.run(
            [
                "cmake",
                "-S", str(source),
                "-B", str(build),
                f"-DCMAKE_BUILD_TYPE={config}",
                f"-DPython3_EXECUTABLE={sys.executable}",
                "-DSETLAB_PYTHON=ON",
            ],
            check=True,
        )
        subprocess.run(
            ["cmake", "--build", str(build), "--target", "_core", "-j"],
            check=True,
        )
        built = sorted((build / "python" / "setlab").glob("_core.*"))
        if not built:
            raise RuntimeError("cmake did not produce the _core module")
        target = Path(self.get_ext_fullpath(ext.name)).resolve()
        target.parent.mkdir(parents=True, exist_ok=True)
        shutil.copy2(built[0], target)


setup(ext_modules=[CMakeExtension("setlab._core")], cmdclass={"build_ext": CMakeBuild})
