# Do not change! Do not track in version control!
__version__ = "0.0.0"
