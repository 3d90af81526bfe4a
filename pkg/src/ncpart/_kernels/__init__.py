"""Kernel dispatch: compiled extension if available, numpy fallback otherwise.

``BACKEND`` is "c" or "python". NCPART_PURE_PYTHON=1 forces the fallback.
"""

import os

if os.environ.get("NCPART_PURE_PYTHON"):
    from ._pykernels import (  # noqa: F401
        BACKEND,
        blocks_csr,
        cond_sample_block,
        parents_lastflags,
        twig_heads,
    )
else:
    try:
        from ._ckernels import (  # noqa: F401
            BACKEND,
            blocks_csr,
            cond_sample_block,
            parents_lastflags,
            twig_heads,
        )
    except ImportError:
        from ._pykernels import (  # noqa: F401
            BACKEND,
            blocks_csr,
            cond_sample_block,
            parents_lastflags,
            twig_heads,
        )

HAVE_COMPILED = BACKEND == "c"
