from prefect import flow

from pipelines.corpus_pipeline import run_corpus_pipeline
from pipelines.sign_scan_pipeline import run_sign_scan_pipeline


@flow(name="Signed Geometry Corpus Run")
def run_full_pipeline(sign_scan_spec: str = "chorded-heptagon"):
    """
    Main orchestration flow that runs the complete verification:
    1. Certificates, curvature-route agreement and the p = 2 oracle over the corpus
    2. Diameter-bound scan over every switching class of one graph
    """
    summary = run_corpus_pipeline()
    scan = run_sign_scan_pipeline(spec=sign_scan_spec)

    return {
        "certificate_failures": summary["certificate_failures"],
        "switching_classes": len(scan["result"]["classes"]),
    }


if __name__ == "__main__":
    result = run_full_pipeline()
    print(f"Corpus run completed with {result['certificate_failures']} certificate failures.")
