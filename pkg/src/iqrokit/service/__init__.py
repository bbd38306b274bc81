from .app import DEFAULT_BIND, PackLoadError, ServiceConfig, SessionStore, create_app

__all__ = ["DEFAULT_BIND", "PackLoadError", "ServiceConfig", "SessionStore", "create_app"]
