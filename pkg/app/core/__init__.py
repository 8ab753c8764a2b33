# keep file so Python treats folder as a package
