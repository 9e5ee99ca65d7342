#!/usr/bin/env python3
"""
Script to run individual pipeline flows for testing and development
"""
import argparse
import math

from src.cli.arguments import parse_dimension


def main():
    parser = argparse.ArgumentParser(description="Run individual pipeline flows")
    parser.add_argument(
        "pipeline",
        choices=["certificate", "sign-scan", "corpus", "all"],
        help="Pipeline flow to run",
    )
    parser.add_argument(
        "--gen",
        default="cycle:5:unbalanced",
        help="Generator spec (certificate and sign-scan flows)",
    )
    parser.add_argument(
        "--input",
        help="Signed edge-list file instead of --gen (certificate flow only)",
    )
    parser.add_argument(
        "--N",
        dest="n_values",
        type=parse_dimension,
        action="append",
        help="Dimension N (repeatable)",
    )

    args = parser.parse_args()
    n_values = tuple(args.n_values) if args.n_values else (math.inf,)

    if args.pipeline == "certificate":
        from pipelines.certificate_pipeline import run_certificate_pipeline

        print("Running certificate pipeline...")
        spec = None if args.input else args.gen
        report = run_certificate_pipeline(spec=spec, input_path=args.input, n_values=n_values)
        print(f"Certificate pipeline completed with {report['result']['certificate_failures']} certificate failures.")

    elif args.pipeline == "sign-scan":
        from pipelines.sign_scan_pipeline import run_sign_scan_pipeline

        print("Running sign-scan pipeline...")
        report = run_sign_scan_pipeline(spec=args.gen)
        print(f"Sign-scan pipeline completed. Evaluated {len(report['result']['classes'])} switching classes.")

    elif args.pipeline == "corpus":
        from pipelines.corpus_pipeline import run_corpus_pipeline

        print("Running corpus pipeline...")
        summary = run_corpus_pipeline(n_values=n_values)
        print(f"Corpus pipeline completed with {summary['certificate_failures']} certificate failures.")

    elif args.pipeline == "all":
        print("Running full pipeline...")
        from main_orchestrated import run_full_pipeline

        result = run_full_pipeline(sign_scan_spec=args.gen)
        print(f"Full pipeline completed! Scanned {result['switching_classes']} switching classes.")


if __name__ == "__main__":
    main()
