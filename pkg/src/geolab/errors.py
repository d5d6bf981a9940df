"""Exception hierarchy shared by every geolab module."""


class GeolabError(Exception):
    """Base class for all errors raised by geolab."""


class ZeroDenominator(GeolabError, ZeroDivisionError):
    pass


class DivisionByZero(GeolabError, ZeroDivisionError):
    pass


class UnknownCoordinate(GeolabError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class PoleAtPoint(GeolabError, ArithmeticError):
    pass


class ChartMismatch(GeolabError, ValueError):
    pass


class KindMismatch(GeolabError, TypeError):
    pass


class DegreeError(GeolabError, ValueError):
    pass


class NotComplex(GeolabError, ValueError):
    pass


class NotAlmostComplex(GeolabError, ValueError):
    """An endomorphism failed J^2 = -id or orthogonality."""


class NotAlmostContact(GeolabError, ValueError):
    pass


class BadInput(GeolabError, ValueError):
    pass


class EvenDimension(GeolabError, ValueError):
    pass


class SingularFlat(GeolabError, ArithmeticError):
    pass


class SingularTheta(GeolabError, ArithmeticError):
    pass


class SingularMatrix(GeolabError, ArithmeticError):
    pass
