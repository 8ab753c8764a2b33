# app/api/__init__.py
# keep file so Python treats folder as a package
