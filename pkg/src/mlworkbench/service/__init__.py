from .app import create_app
from .store import Store, StoredProject

__all__ = ["create_app", "Store", "StoredProject"]
