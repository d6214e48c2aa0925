"""Text forms of complex numbers and tab-separated output records."""
import re

_COMPLEX_RE = re.compile(r"^[0-9eE.+\-nainf]+i?$")


def format_complex(z):
    """'a+bi' with 17 significant digits; the sign of a zero part is kept."""
    z = complex(z)
    re_part = "%.17g" % z.real
    im_part = "%.17g" % z.imag
    if not im_part.startswith("-"):
        im_part = "+" + im_part
    return f"{re_part}{im_part}i"


def parse_complex(text):
    """Parse 'a+bi' (exponents allowed), a bare real 'a' or a bare 'bi'."""
    s = text.strip()
    if not s or not _COMPLEX_RE.match(s):
        raise ValueError(f"not a complex number: {text!r}")
    if s.endswith("i"):
        s = s[:-1] + "j"
    try:
        return complex(s)
    except ValueError:
        raise ValueError(f"not a complex number: {text!r}") from None


def format_record(*fields):
    out = []
    for f in fields:
        if isinstance(f, complex):
            out.append(format_complex(f))
        elif isinstance(f, bool):
            out.append("true" if f else "false")
        elif isinstance(f, float):
            out.append("%.17g" % f)
        elif isinstance(f, (tuple, list)):
            out.append(",".join(format_complex(v) if isinstance(v, complex) else str(v)
                                for v in f))
        else:
            out.append(str(f))
    return "\t".join(out)


def parse_record(line):
    return line.rstrip("\n").split("\t")
