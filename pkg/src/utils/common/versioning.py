from importlib.metadata import PackageNotFoundError, version

PACKAGE_NAME = "compound-wiretap-lab"
FALLBACK_VERSION = "0.1.0"
REPORT_SCHEMA_VERSION = 1
CODEBOOK_SCHEMA_VERSION = 1


def library_version() -> str:
    try:
        return version(PACKAGE_NAME)
    except PackageNotFoundError:
        return FALLBACK_VERSION
