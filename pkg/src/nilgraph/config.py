import os

DEFAULT_BRUTE_CAP = 9
MAX_BRUTE_CAP = 11
CAP_ENV_VAR = "NILGRAPH_BRUTE_CAP"


class CapError(ValueError):
    pass


def resolve_cap(flag: int | None = None) -> int:
    """Brute-force vertex cap: explicit flag, then environment, then default."""
    if flag is None:
        raw = os.environ.get(CAP_ENV_VAR)
        if raw is None or raw == "":
            return DEFAULT_BRUTE_CAP
        try:
            flag = int(raw)
        except ValueError:
            raise CapError(f"{CAP_ENV_VAR}={raw!r} is not an integer") from None
    if not 1 <= flag <= MAX_BRUTE_CAP:
        raise CapError(f"brute-force cap must be in [1, {MAX_BRUTE_CAP}], got {flag}")
    return flag
