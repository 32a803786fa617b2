# Catalog persistence and golden tables
