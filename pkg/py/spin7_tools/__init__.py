from .errors import Spin7Error
from .representation_certifier import CertReport, FlatRep, certify

__version__ = "0.1.0"
