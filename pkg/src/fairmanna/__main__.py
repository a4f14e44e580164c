from fairmanna.cli import main

main()
