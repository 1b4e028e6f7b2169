import os

from .paths import package_dir

app_version = "0.3.0"


def git_revision(repository_dir: str) -> str:
    """
    Short commit hash of a git checkout, resolving a symbolic HEAD.
    Empty when the package is not installed from a checkout.
    """
    git_dir = os.path.join(repository_dir, ".git")
    try:
        with open(os.path.join(git_dir, "HEAD")) as f:
            head = f.read().strip()
        if head.startswith("ref: "):
            with open(os.path.join(git_dir, head[len("ref: ") :])) as f:
                head = f.read().strip()
    except OSError:
        return ""
    return head[:8]


_revision = git_revision(os.path.dirname(package_dir))
app_build_version = f"{app_version}+{_revision}" if _revision else app_version
