"""senselex: crowd-sourced sense/polarity lexicon tooling.

Subpackages: lexicon domain types and adjudication (`lexicon`), corpus
pair statistics (`corpus`), review featurization (`features`,
`embeddings`), classifiers and the experiment harness (`learners`), the
annotation HTTP service (`service`), and the command-line front end
(`cli`).
"""

__version__ = "0.1.0"
