# This file makes core.bratteli a package
