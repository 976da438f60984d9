# state.py
"""
Global State Management

This module provides a central location for run-wide state. It initializes and
exports a shared settings instance that commands read their defaults from.
"""

from models.settings import Settings

# Initialize a shared settings instance for global state management
settings = Settings()
