# This file makes core.matcat a package
