"""Frozen reference values used by the selection and acceptance tests."""

# Average coherence by topic count from a published 49-run sweep (k = 2..50);
# the maximum sits at k = 4.
REFERENCE_SWEEP = [
    (2, -6.1450), (3, -6.0560), (4, -4.6730), (5, -5.2120), (6, -5.7230),
    (7, -5.8700), (8, -6.6150), (9, -6.8800), (10, -6.1840), (11, -5.6000),
    (12, -5.4140), (13, -5.3280), (14, -6.7830), (15, -6.0380),
    (16, -5.6930), (17, -5.6520), (18, -6.5670), (19, -6.0470),
    (20, -6.0610), (21, -6.3420), (22, -5.5790), (23, -6.0700),
    (24, -5.9090), (25, -6.7030), (26, -6.6010), (27, -5.9930),
    (28, -5.9870), (29, -5.8120), (30, -6.0040), (31, -5.8810),
    (32, -6.0350), (33, -5.8860), (34, -6.2010), (35, -5.7920),
    (36, -6.0450), (37, -6.5680), (38, -6.3470), (39, -6.1800),
    (40, -6.2180), (41, -6.4490), (42, -6.1700), (43, -6.2120),
    (44, -6.3390), (45, -5.8690), (46, -6.2330), (47, -6.1720),
    (48, -5.9840), (49, -6.1210), (50, -5.9280),
]

# Per-topic coherence scores of the published four-topic model; their mean
# reproduces the sweep's k=4 entry above.
REFERENCE_TOPIC_COHERENCES = [-5.017, -2.000, -5.730, -5.946]
