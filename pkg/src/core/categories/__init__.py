# This file makes core.categories a package
