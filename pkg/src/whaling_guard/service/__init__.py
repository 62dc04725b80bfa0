"""HTTP service, persistence, and batch ingestion."""

from .app import create_app
from .config import ServiceConfig, load_config
from .maildrop import MaildropWatcher, scan_maildrop
from .store import DECISION_VALUES, ProfileTrio, Store, StoreError

__all__ = [
    "DECISION_VALUES",
    "MaildropWatcher",
    "ProfileTrio",
    "ServiceConfig",
    "Store",
    "StoreError",
    "create_app",
    "load_config",
    "scan_maildrop",
]
