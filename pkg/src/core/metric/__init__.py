# This file makes core.metric a package
