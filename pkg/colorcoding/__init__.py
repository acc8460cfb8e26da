from .family import FamilyVerdict, HashFamily, build_family, verify_family
