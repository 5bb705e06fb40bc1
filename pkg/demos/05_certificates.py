"""
Nonexistence certificates for odd lengths
=========================================

"""

import json

from barkerlab.certlab import (NonexistenceCertificate, case_classify, certificate_range,
                               nonexistence_certificate, verify_certificate)

cert = nonexistence_certificate(21)
print(cert.case_counts())
for rec in cert.records:
    print(rec.p, rec.case, rec.witness)

# round trip through JSON and check again
doc = cert.to_json()
print(verify_certificate(NonexistenceCertificate.from_json(doc)))

# tamper with one field and the check fails
bad = json.loads(doc)
bad["records"][0]["witness"]["front"][0] += 1
print(verify_certificate(bad))

# a single (n, p) pair
print(case_classify(1001, 41))

# a whole range
rows = certificate_range(15, 2001)
print(len(rows), all(ok for _, ok, _ in rows))
print(rows[-1])
