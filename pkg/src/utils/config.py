from typing import Dict


class Config:
    """
    Configuration class for the toolkit.

    Attributes:
        log_file (str): Path to the log file.
        log_level (str): Logging level.
        random_seed (int): Seed shared by every randomized search.
        frustration_size_limit (int): Largest vertex count accepted by the exact frustration sweep.
        cheeger_size_limit (int): Largest vertex count accepted by the exact Cheeger sweep.
        sign_scan_edge_limit (int): Largest edge count accepted by the switching-class scan.
        p_restarts (int): Number of restarts of the p-Laplacian eigenvalue solver.
        p_max_iterations (int): Iteration cap per restart of the p-Laplacian eigenvalue solver.
        falsifier_budget (int): Number of random starts of the CD_p falsifier.
        zero_tolerance (float): Eigenvalue clustering and zero threshold.
        bound_tolerance (float): Slack used on every theorem comparison.
        workers (int): Worker count for partitioned enumerations.
        report_dir (str): Directory for saved reports.
    """

    def __init__(self, config: Dict[str, str]):
        self.log_file = config.get("LOG_FILE", "logs/signed_geometry.log")
        self.log_level = str(config.get("LOG_LEVEL", "INFO")).upper()

        self.random_seed = int(config.get("RANDOM_SEED", 20240611))

        self.frustration_size_limit = int(config.get("FRUSTRATION_SIZE_LIMIT", 24))
        self.cheeger_size_limit = int(config.get("CHEEGER_SIZE_LIMIT", 20))
        self.sign_scan_edge_limit = int(config.get("SIGN_SCAN_EDGE_LIMIT", 20))

        self.p_restarts = int(config.get("P_RESTARTS", 50))
        self.p_max_iterations = int(config.get("P_MAX_ITERATIONS", 1500))
        self.falsifier_budget = int(config.get("FALSIFIER_BUDGET", 24))

        self.zero_tolerance = float(config.get("ZERO_TOLERANCE", 1e-8))
        self.bound_tolerance = float(config.get("BOUND_TOLERANCE", 1e-9))

        self.workers = int(config.get("WORKERS", 1))
        self.report_dir = config.get("REPORT_DIR", "reports")

        self.__validate_config()

    def __validate_config(self):
        """
        Validate the configuration values.
        Raises:
            ValueError: If any required configuration is missing or invalid.
        """
        for key in (
            "frustration_size_limit",
            "cheeger_size_limit",
            "sign_scan_edge_limit",
            "p_restarts",
            "p_max_iterations",
            "falsifier_budget",
            "workers",
        ):
            if getattr(self, key) <= 0:
                raise ValueError(f"{key.upper()} must be a positive integer.")

        for key in ("zero_tolerance", "bound_tolerance"):
            value = getattr(self, key)
            if not 0.0 < value < 1e-3:
                raise ValueError(f"{key.upper()} must lie in (0, 1e-3).")

        if self.random_seed < 0:
            raise ValueError("RANDOM_SEED must be a non-negative integer.")

        if not isinstance(self.report_dir, str) or not self.report_dir.strip():
            raise ValueError("REPORT_DIR is required.")
        if not isinstance(self.log_file, str) or not self.log_file.strip():
            raise ValueError("LOG_FILE must be a non-empty string.")
        if not isinstance(self.log_level, str) or not self.log_level.strip():
            raise ValueError("LOG_LEVEL must be a non-empty string.")

    def with_overrides(self, overrides: Dict[str, object]) -> "Config":
        """Return a new Config with some upper-case keys replaced; None values are ignored."""
        merged = self.as_dict()
        merged.update({key: str(value) for key, value in overrides.items() if value is not None})
        return Config(merged)

    def as_dict(self) -> Dict[str, str]:
        return {
            "LOG_FILE": self.log_file,
            "LOG_LEVEL": self.log_level,
            "RANDOM_SEED": str(self.random_seed),
            "FRUSTRATION_SIZE_LIMIT": str(self.frustration_size_limit),
            "CHEEGER_SIZE_LIMIT": str(self.cheeger_size_limit),
            "SIGN_SCAN_EDGE_LIMIT": str(self.sign_scan_edge_limit),
            "P_RESTARTS": str(self.p_restarts),
            "P_MAX_ITERATIONS": str(self.p_max_iterations),
            "FALSIFIER_BUDGET": str(self.falsifier_budget),
            "ZERO_TOLERANCE": repr(self.zero_tolerance),
            "BOUND_TOLERANCE": repr(self.bound_tolerance),
            "WORKERS": str(self.workers),
            "REPORT_DIR": self.report_dir,
        }
