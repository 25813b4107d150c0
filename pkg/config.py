"""Application configuration."""
import os
from dotenv import load_dotenv

load_dotenv()


class Config:
    """Base configuration."""

    # Flask
    SECRET_KEY = os.getenv('SECRET_KEY', 'dev-secret-key-change-in-production')
    JSON_SORT_KEYS = False

    # Search caps
    ORDER_CAP = int(os.getenv('GLR_CAP', 8))
    TUPLE_CAP = int(os.getenv('GLR_TUPLE_CAP', 10**6))
    GROUP_CAP = int(os.getenv('GLR_GROUP_CAP', 5040))

    # Move engine
    MOVE_RETRIES = int(os.getenv('GLR_MOVE_RETRIES', 64))

    # Logging
    LOG_LEVEL = os.getenv('GLR_LOG_LEVEL', 'WARNING')


class DevelopmentConfig(Config):
    """Development configuration."""
    DEBUG = True
    LOG_LEVEL = os.getenv('GLR_LOG_LEVEL', 'INFO')


class ProductionConfig(Config):
    """Production configuration."""
    DEBUG = False


class TestingConfig(Config):
    """Testing configuration."""
    TESTING = True
    LOG_LEVEL = 'ERROR'


config = {
    'development': DevelopmentConfig,
    'production': ProductionConfig,
    'testing': TestingConfig,
    'default': DevelopmentConfig
}
