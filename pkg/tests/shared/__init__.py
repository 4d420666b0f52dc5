# Shared builders for synthetic schematics
