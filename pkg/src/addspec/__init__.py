from importlib.metadata import PackageNotFoundError, version

try:
    __version__ = version('addspec')
except PackageNotFoundError:
    __version__ = 'dev'
